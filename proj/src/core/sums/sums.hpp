#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chars/characters.hpp"
#include "cyclo/cyclotomic.hpp"

namespace gjsum::sums {

inline constexpr std::uint64_t kDefaultTermBudget = std::uint64_t{1} << 32;

// Histogram over exponents of zeta_{pd}; the Gauss sum is sum_e hist[e] zeta_{pd}^e.
std::vector<std::int64_t> gauss_histogram(const chars::AdditiveCharacter& psi, const chars::MultiplicativeCharacter& chi);

// g(psi, chi) = -sum_{m != 0} psi(m) chi(m^((q-1)/d)), conductor pd.
cyclo::CyclotomicNumber gauss_sum(const chars::AdditiveCharacter& psi, const chars::MultiplicativeCharacter& chi);

// (-1)^(n-1) sum over nonzero m_1 + ... + m_n = 1 of prod chi_i(m_i^((q-1)/d)), conductor d.
cyclo::CyclotomicNumber jacobi_sum(std::span<const chars::MultiplicativeCharacter> chis,
                                   std::uint64_t budget = kDefaultTermBudget);
cyclo::CyclotomicNumber jacobi_sum(const chars::RootsOfUnity& mu, std::span<const int> avec,
                                   std::uint64_t budget = kDefaultTermBudget);

// Number of tuples of nonzero m_i with sum c, bucketed by (power_index(m_1), ..., power_index(m_n))
// in mixed radix d with the first coordinate most significant. Enumerates (q-1)^(n-1) tuples.
std::vector<std::int64_t> tuple_counts(const chars::RootsOfUnity& mu, int n, ff::Elem c,
                                       std::uint64_t budget = kDefaultTermBudget);

// (-1)^(n-1) sum_k counts[k] zeta_d^(a . k) for counts over (Z/d)^n.
cyclo::CyclotomicNumber jacobi_from_counts(int d, int n, std::span<const std::int64_t> counts, std::span<const int> avec);

std::uint64_t tuple_index(std::span<const int> keys, int d);
std::vector<int> tuple_keys(std::uint64_t index, int d, int n);

}  // namespace gjsum::sums
