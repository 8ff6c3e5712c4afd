#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "cyclo/cyclotomic.hpp"
#include "ff/finite_field.hpp"

namespace gjsum::cyclo {

// Truncated unramified extension (Z/p^M)[t]/(P(t)) of Z_p, P lifting the
// residue field modulus, with the Teichmueller lift of omega.
struct TeichmuellerLift {
    int precision;
    Integer modulus;                      // p^M
    std::vector<std::vector<Integer>> zeta_images;  // omega_hat^e for 0 <= e < d
};

// Arithmetic of p in Q(zeta_d): residue field, the prime v given by
// zeta_d -> omega, and representatives of G/D for G = (Z/d)^*, D = <p>.
class PrimeSplitting {
public:
    PrimeSplitting(int d, std::uint64_t p, const ff::FieldOptions& options = {}, int expected_weight = 2);

    int d() const noexcept { return d_; }
    std::uint64_t p() const noexcept { return p_; }
    int f() const noexcept { return f_; }
    std::uint64_t q() const noexcept { return q_; }
    const ff::FieldPtr& residue_field() const noexcept { return field_; }
    ff::Elem omega() const noexcept { return omega_; }
    const std::vector<int>& coset_reps() const noexcept { return coset_reps_; }
    const std::vector<int>& decomposition_group() const noexcept { return decomposition_; }
    int precision() const noexcept { return precision_; }
    // Position in coset_reps of the coset containing the unit h.
    int coset_index(std::int64_t h) const;

    const TeichmuellerLift& lift(int precision) const;

    // v_{sigma_h v}(alpha) for the unit h.
    int valuation(const CyclotomicNumber& alpha, std::int64_t h) const;
    // Valuations at sigma_h v for h in coset_reps.
    std::vector<int> valuations(const CyclotomicNumber& alpha) const;
    // Same for an integral element of conductor d given by machine-word coefficients.
    std::vector<int> valuations(std::span<const std::int64_t> coeffs) const;

private:
    std::optional<int> try_valuation(std::span<const Integer> nums, int exponent_scale, std::int64_t h,
                                     const TeichmuellerLift& lift) const;
    int integral_valuation(std::span<const Integer> nums, int exponent_scale, std::int64_t h) const;

    int d_;
    std::uint64_t p_;
    int f_;
    std::uint64_t q_;
    ff::FieldPtr field_;
    ff::Elem omega_;
    std::vector<int> coset_reps_;
    std::vector<int> decomposition_;
    std::vector<int> coset_of_;
    int precision_;

    mutable std::mutex lift_mutex_;
    mutable std::map<int, std::unique_ptr<TeichmuellerLift>> lifts_;
};

using SplittingPtr = std::shared_ptr<const PrimeSplitting>;

SplittingPtr make_splitting(int d, std::uint64_t p, const ff::FieldOptions& options = {}, int expected_weight = 2);

int padic_valuation(const CyclotomicNumber& alpha, const PrimeSplitting& split, std::int64_t h);

}  // namespace gjsum::cyclo
