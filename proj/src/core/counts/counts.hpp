#pragma once

#include <cstdint>

#include <json.hpp>

#include "ff/finite_field.hpp"
#include "report/check_report.hpp"

namespace gjsum::counts {

using ff::Elem;

enum class VarietyKind { ArtinSchreier, Fermat };

// Artin-Schreier: x^q - x = y^d plus one point at infinity, q the base field size.
// Fermat: u_1^d + ... + u_n^d = c u_0^d in P^n, c encoded in the base field.
struct VarietySpec {
    VarietyKind kind = VarietyKind::ArtinSchreier;
    std::uint64_t p = 0;
    int f = 1;
    int d = 1;
    int n = 0;
    Elem c = 1;

    static VarietySpec artin_schreier(std::uint64_t p, int f, int d);
    static VarietySpec fermat(std::uint64_t p, int f, int d, int n, Elem c);

    nlohmann::ordered_json to_json() const;
};

struct CountOptions {
    std::uint64_t max_cells = 100'000'000;  // pairs for curves, projective points for hypersurfaces
    unsigned jobs = 1;
    ff::FieldOptions field;
};

// Number of F_{q^r}-rational points. Throws BudgetExceeded above the cell budget.
std::uint64_t count_points(const VarietySpec& spec, int r, const CountOptions& options = {});

struct Calibration {
    int sign = 0;
    nlohmann::ordered_json instance;
};

// Sign fixed by the first nonzero eigenvalue sum on x^5 - x = y^2 over F_{5^r}, r = 1, 2, 3.
const Calibration& artin_schreier_calibration();
// Sign fixed on u_1^4 + u_2^4 = u_0^4 over F_5; degree n uses this sign times (-1)^n.
const Calibration& fermat_calibration();
int fermat_sign(int n);

// count = q^r + 1 + eps sum_{psi != 1, chi != 1} g(psi, chi)^r, with the r-th power sum
// compared against Gauss sums computed directly over F_{q^r}.
CheckReport lefschetz_check_artin_schreier(std::uint64_t p, int f, int d, int r, const CountOptions& options = {});
// count = sum_{i<n} q^{ri} + eps_n sum_{a admissible} (chi_a(c) j(a))^r, with the same direct comparison.
CheckReport lefschetz_check_fermat(std::uint64_t p, int f, int d, int n, Elem c, int r,
                                   const CountOptions& options = {});

}  // namespace gjsum::counts
