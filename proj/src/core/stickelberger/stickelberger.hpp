#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclo/cyclotomic.hpp"
#include "cyclo/prime_splitting.hpp"
#include "lattice/lattice.hpp"
#include "report/check_report.hpp"

namespace gjsum::stickelberger {

using cyclo::Integer;
using cyclo::Rational;

// Element sum_h c_h sigma_h of Q[G], G = (Z/d)^*, with sigma_h: zeta_d -> zeta_d^h.
class GroupRingQ {
public:
    explicit GroupRingQ(int d);

    static GroupRingQ sigma(int d, std::int64_t h);
    // The trace element: sum of all sigma_h.
    static GroupRingQ trace(int d);

    int d() const noexcept { return d_; }
    // Units of Z/d in increasing order; coefficient positions follow this order.
    const std::vector<int>& units() const noexcept { return *units_; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    const Rational& coefficient(std::int64_t h) const;
    void add(std::int64_t h, const Rational& value);

    // sigma_g * x: the coefficient of sigma_h moves to sigma_{gh}.
    GroupRingQ act(std::int64_t g) const;
    bool is_minus() const;
    bool is_integral() const;
    std::vector<Integer> integer_coefficients() const;

    GroupRingQ& operator+=(const GroupRingQ& other);
    GroupRingQ& operator-=(const GroupRingQ& other);
    friend GroupRingQ operator+(GroupRingQ a, const GroupRingQ& b) { return a += b; }
    friend GroupRingQ operator-(GroupRingQ a, const GroupRingQ& b) { return a -= b; }
    GroupRingQ scaled(const Rational& factor) const;
    friend bool operator==(const GroupRingQ& a, const GroupRingQ& b) {
        return a.d_ == b.d_ && a.coeffs_ == b.coeffs_;
    }

    // "c1*s1 + c2*s2 ..." over nonzero coefficients, "0" when empty.
    std::string to_string() const;
    nlohmann::ordered_json to_json() const;

private:
    std::size_t position(std::int64_t h) const;

    int d_;
    std::shared_ptr<const std::vector<int>> units_;
    std::vector<int> position_;
    std::vector<Rational> coeffs_;
};

// theta_d(a) = sum_h {-ha/d} sigma_h^{-1}
GroupRingQ theta(int d, std::int64_t a);
// theta_d(a_1) + ... + theta_d(a_n) - theta_d(a_1 + ... + a_n), integral on admissible tuples.
GroupRingQ theta_vec(int d, std::span<const int> avec);
// theta_d(a) - T/2
GroupRingQ theta_tilde(int d, std::int64_t a);

// theta~(na) = sum_{i<n} theta~(a + (d/n) i)
CheckReport check_distribution(int d, int n, int a);

// Push-forward Z[G] -> Z[G/D], indexed by the splitting's coset representatives.
std::vector<Integer> project(const cyclo::PrimeSplitting& split, const GroupRingQ& x);

// Valuations of j_d(a) at the primes above p against the projection of theta_d(a).
CheckReport check_factorization(const cyclo::PrimeSplitting& split, std::span<const int> avec);

// The factorization check for every admissible tuple of each arity in [2, max_arity], one report
// per arity at batch level. A field beyond the enumeration budget yields a BudgetExceeded report.
std::vector<CheckReport> factorization_suite(int d, std::uint64_t p, int max_arity,
                                             const ff::FieldOptions& options = {});

// Hermite basis of the lattice spanned by theta_d(a, b) over admissible pairs, in the
// coordinates of units(); stability under every sigma_h is verified.
lattice::Matrix ideal_lattice(int d);

class HMinusTable {
public:
    HMinusTable() = default;
    static HMinusTable load(const std::filesystem::path& path);
    // The table shipped in data/, or the path in GJSUM_HMINUS_TABLE when set.
    static HMinusTable bundled();

    std::optional<Integer> lookup(int d) const;
    const std::string& source() const noexcept { return source_; }

private:
    std::map<int, Integer> values_;
    std::string source_;
};

struct IndexReport {
    int d = 0;
    int r = 0;  // number of distinct prime factors of d
    int s = 0;  // max(0, r - 2)
    std::size_t minus_rank = 0;  // rank of Z[G]^-
    std::size_t literal_rank = 0;  // rank of S intersected with Z[G]^-
    std::optional<Integer> literal_index;  // (Z[G]^- : S cap Z[G]^-) when finite
    std::optional<Integer> quotient_index;  // (Z[G]^- : (1 - sigma_{-1}) S) when finite
    std::optional<Integer> hminus;
    std::optional<Integer> formula_r;  // 2^r h^-
    std::optional<Integer> formula_s;  // 2^s h^-
    bool ambiguity = true;
    std::string note;

    bool finite() const { return literal_index.has_value(); }
    nlohmann::ordered_json to_json() const;
};

IndexReport minus_index_report(int d, const HMinusTable& table = HMinusTable::bundled());

// theta~(a) over units a with {a/d} < 1/2 is a basis of Q[G]^-.
CheckReport check_minus_basis(int d);

// Reflection, oddness, distribution, integrality on arities 2..4, Galois equivariance, and
// the projected trace, each as one batch report.
std::vector<CheckReport> theta_identities(int d);

}  // namespace gjsum::stickelberger
