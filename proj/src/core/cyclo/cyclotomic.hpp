#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gjsum::cyclo {

using Integer = mpz_class;
using Rational = mpq_class;

// Data for Q(zeta_n): the cyclotomic polynomial and reduced powers of zeta_n.
class CycloContext {
public:
    explicit CycloContext(int n);

    int conductor() const noexcept { return n_; }
    int degree() const noexcept { return phi_; }
    // Coefficients of Phi_n, constant term first.
    const std::vector<std::int64_t>& polynomial() const noexcept { return poly_; }
    // Reduced coefficient vector (length phi) of zeta_n^e for 0 <= e < power_count().
    std::span<const std::int64_t> power(int e) const {
        return {powers_.data() + static_cast<std::size_t>(e) * phi_, static_cast<std::size_t>(phi_)};
    }
    int power_count() const noexcept { return power_count_; }

private:
    int n_;
    int phi_;
    int power_count_;
    std::vector<std::int64_t> poly_;
    std::vector<std::int64_t> powers_;
};

// Shared, immutable context for conductor n; safe to call from any thread.
const CycloContext& context(int n);

// Exact element of Q(zeta_n) in the power basis modulo Phi_n, stored as
// integer numerators over a common positive denominator.
class CyclotomicNumber {
public:
    CyclotomicNumber();  // zero at conductor 1
    explicit CyclotomicNumber(int conductor);

    static CyclotomicNumber from_integer(int conductor, const Integer& value);
    static CyclotomicNumber from_rational(int conductor, const Rational& value);
    static CyclotomicNumber zeta_power(int conductor, std::int64_t e);
    // sum_e hist[e] zeta_n^e for a histogram of length n.
    static CyclotomicNumber from_histogram(int conductor, std::span<const std::int64_t> hist);
    static CyclotomicNumber from_coefficients(int conductor, std::span<const Rational> coeffs);
    static CyclotomicNumber from_numerators(int conductor, std::vector<Integer> nums, Integer den = 1);
    // Parses the "n:[c0,c1,...]" serialization.
    static CyclotomicNumber parse(std::string_view text);

    int conductor() const noexcept { return n_; }
    int degree() const noexcept { return static_cast<int>(num_.size()); }
    const std::vector<Integer>& numerators() const noexcept { return num_; }
    const Integer& denominator() const noexcept { return den_; }
    std::vector<Rational> coefficients() const;

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    // Value when is_rational(); throws otherwise.
    Rational rational_value() const;

    std::string to_string() const;

    CyclotomicNumber operator-() const;
    CyclotomicNumber& operator+=(const CyclotomicNumber& other);
    CyclotomicNumber& operator-=(const CyclotomicNumber& other);
    CyclotomicNumber& operator*=(const CyclotomicNumber& other);
    CyclotomicNumber& operator/=(const CyclotomicNumber& other);
    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
    friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }
    // Equality in the common overfield; canonical vectors within one conductor.
    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

    CyclotomicNumber inverse() const;
    CyclotomicNumber pow(std::int64_t e) const;
    CyclotomicNumber conj() const;
    CyclotomicNumber scaled(const Rational& r) const;
    // Image under zeta_n -> zeta_n^h; h must be a unit mod n.
    CyclotomicNumber galois(std::int64_t h) const;
    // Product of all Galois conjugates.
    Rational norm() const;

private:
    void normalize();
    static CyclotomicNumber multiply_same(const CyclotomicNumber& a, const CyclotomicNumber& b);

    int n_;
    std::vector<Integer> num_;
    Integer den_;
};

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& alpha);

CyclotomicNumber galois_apply(std::int64_t h, const CyclotomicNumber& alpha);
CyclotomicNumber cast_conductor(const CyclotomicNumber& alpha, int m);
std::optional<int> is_root_of_unity(const CyclotomicNumber& alpha);
std::optional<int> weil_weight(const CyclotomicNumber& alpha, const Integer& q);

// Lifts a and b to the conductor lcm(a.n, b.n).
int common_conductor(int n, int m);

}  // namespace gjsum::cyclo
