#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace gjsum::nt {

bool is_prime(std::uint64_t n);

// Prime factorization as (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

// Non-negative residue of a modulo m (m > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Inverse of a modulo m; empty when gcd(a, m) != 1.
std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t m);

// Order of a in (Z/m)^*; requires gcd(a, m) = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

// base^exp, or empty on overflow past limit.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp,
                                         std::uint64_t limit = UINT64_MAX);

// Units of Z/m in increasing order.
std::vector<int> units_mod(int m);

}  // namespace gjsum::nt
