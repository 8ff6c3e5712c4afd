#include "util/numtheory.hpp"

#include <algorithm>
#include <numeric>

namespace gjsum::nt {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin bases for 64-bit integers.
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (auto [p, e] : factorize(n)) out.push_back(p);
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 1; i * i <= n; ++i) {
        if (n % i != 0) continue;
        out.push_back(i);
        if (i != n / i) out.push_back(n / i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
    return result;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t quot = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
    }
    if (old_r != 1) return std::nullopt;
    return mod(old_s, m);
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 1;
    std::uint64_t order = euler_phi(m);
    for (auto [p, e] : factorize(order)) {
        for (int i = 0; i < e && order % p == 0 && pow_mod(a, order / p, m) == 1; ++i) order /= p;
    }
    return order;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && result > limit / base) return std::nullopt;
        result *= base;
    }
    if (result > limit) return std::nullopt;
    return result;
}

std::vector<int> units_mod(int m) {
    std::vector<int> out;
    for (int h = 0; h < m; ++h) {
        if (std::gcd(h, m) == 1) out.push_back(h);
    }
    if (m == 1) out = {0};
    return out;
}

}  // namespace gjsum::nt
