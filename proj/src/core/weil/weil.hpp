#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "cyclo/cyclotomic.hpp"
#include "cyclo/prime_splitting.hpp"
#include "report/check_report.hpp"

namespace gjsum::weil {

using cyclo::CyclotomicNumber;
using cyclo::Integer;

// Valuations of alpha at sigma_h v for h over the splitting's coset representatives.
// Throws NotPUnit when alpha has a prime factor away from p.
std::vector<Integer> phi(const CyclotomicNumber& alpha, const cyclo::PrimeSplitting& split);

// Phi(alpha) + sigma_{-1} Phi(alpha) = w f T
CheckReport weight_consistency(const CyclotomicNumber& alpha, const cyclo::PrimeSplitting& split, int w);

struct RankReport {
    int d = 0;
    std::uint64_t p = 0;
    int f = 0;
    std::size_t generators = 0;  // admissible pairs, plus q
    std::size_t rank_formula = 0;
    std::optional<std::size_t> rank_computed;
    std::optional<bool> f_even_check;  // every Phi(j) = (f/2) T, for even f
    bool minus_one_in_decomposition = false;  // -1 is a power of p mod d
    std::size_t rank_by_decomposition = 0;  // 1 when -1 lies in D, else 1 + phi(d)/(2f)
    std::string note;

    bool pass() const {
        return rank_computed == rank_formula && (f % 2 == 1 || f_even_check.value_or(false));
    }
    nlohmann::ordered_json to_json() const;
    CheckReport to_check() const;
};

// Rank of the lattice spanned by Phi(j_d(a, b)) over admissible pairs and Phi(q),
// against 1 + phi(d)/(2f) for odd f and 1 for even f.
RankReport rank_report(int d, std::uint64_t p, const ff::FieldOptions& options = {});

struct KernelElement {
    std::vector<Integer> exponents;  // over the generators, q last
    std::optional<int> order;  // order of the evaluated product as a root of unity
};

struct RelationReport {
    int d = 0;
    std::uint64_t p = 0;
    int f = 0;
    int arity_cap = 2;
    std::vector<std::vector<int>> generators;  // q is the implicit last generator
    std::size_t rank_computed = 0;
    std::vector<KernelElement> kernel;
    std::size_t relation_rank = 0;  // rank of reflection, distribution and Frobenius relations
    bool relations_in_kernel = false;
    bool minus_basis = false;
    bool budget_exceeded = false;
    std::string note;

    bool torsion_ok() const;
    bool span_ok() const { return relations_in_kernel && relation_rank == kernel.size(); }
    nlohmann::ordered_json to_json() const;
    CheckReport torsion_check() const;
    // The kernel's rational span equals the span of the known relations.
    CheckReport span_check() const;
};

// Multiplicative relations among Jacobi sums (up to roots of unity) and q: the kernel of the
// valuation matrix, every kernel product evaluated exactly, and the kernel's rational span
// compared with the relations implied by reflection, distribution and Frobenius invariance.
RelationReport relation_lattice(int d, std::uint64_t p, int arity_cap = 2, const ff::FieldOptions& options = {});

}  // namespace gjsum::weil
