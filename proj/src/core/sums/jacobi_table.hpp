#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "chars/characters.hpp"
#include "cyclo/cyclotomic.hpp"

namespace gjsum::sums {

// Jacobi sums of every exponent tuple over one field, from the counts
// C[t][s] = #{m != 0, 1 : key(m) = t, key(1 - m) = s} with key = power_index.
// Tuple counts obey
//   N_n<1>[k', t] = [t = 0] N_{n-1}<0>[k'] + sum_s C[t][s] N_{n-1}<1>[k' - s]
//   N_n<0>[k', t] = ((q-1)/d) N_{n-1}<1>[k' - (key(-1) + t)]
// where k' - s subtracts s from every coordinate. One pass over the field.
class JacobiTable {
public:
    explicit JacobiTable(const chars::RootsOfUnity& mu);

    int d() const noexcept { return d_; }
    std::uint64_t field_order() const noexcept { return q_; }
    std::int64_t cross(int t, int s) const { return cross_[static_cast<std::size_t>(t) * d_ + s]; }
    int minus_one_key() const noexcept { return minus_one_; }

    // Same layout as tuple_counts(mu, n, c).
    const std::vector<std::int64_t>& counts_one(int n);
    const std::vector<std::int64_t>& counts_zero(int n);
    std::vector<std::int64_t> counts(int n, ff::Elem c);

    // F_n[s] = #{nonzero m_1 + ... + m_n = 1 : sum key(m_i) = s}
    std::vector<std::int64_t> diagonal_counts(int n) const;
    // j(chi_a, ..., chi_a) with n entries
    cyclo::CyclotomicNumber diagonal_jacobi(int a, int n) const;

    // Every j(chi_a1, ..., chi_an), reduced mod Phi_d, phi(d) coefficients per tuple.
    const std::vector<std::int64_t>& values(int n);
    cyclo::CyclotomicNumber value(std::span<const int> avec);

private:
    void extend(int n);

    chars::RootsOfUnity mu_;
    int d_;
    std::uint64_t q_;
    int minus_one_;
    std::vector<std::int64_t> cross_;
    std::vector<std::vector<std::int64_t>> one_;
    std::vector<std::vector<std::int64_t>> zero_;
    std::map<int, std::vector<std::int64_t>> values_;
};

// For counts over (Z/d)^n returns sign * sum_k counts[k] zeta_d^(a . k) for every a,
// reduced mod Phi_d, phi(d) coefficients per a in the counts layout.
std::vector<std::int64_t> exponent_transform(int d, int n, std::span<const std::int64_t> counts, bool negate);

}  // namespace gjsum::sums
