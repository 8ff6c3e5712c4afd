#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cyclo/cyclotomic.hpp"

namespace gjsum::cyclo {

// Z[zeta_n] with machine-word coefficients in the reduced power basis, for
// bulk exact computations. Every operation checks for int64 overflow and
// throws ArithmeticOverflow instead of wrapping.
class DenseRing {
public:
    explicit DenseRing(int n);

    int conductor() const noexcept { return n_; }
    int degree() const noexcept { return phi_; }

    void from_histogram(std::span<const std::int64_t> hist, std::span<std::int64_t> out) const;
    void multiply(std::span<const std::int64_t> a, std::span<const std::int64_t> b, std::span<std::int64_t> out) const;
    // out = a * zeta_n^e
    void multiply_zeta(std::span<const std::int64_t> a, std::int64_t e, std::span<std::int64_t> out) const;
    // out = galois image under zeta -> zeta^h
    void galois(std::span<const std::int64_t> a, std::int64_t h, std::span<std::int64_t> out) const;
    // Rewrites an element of conductor m | n at conductor n.
    void lift_from(const DenseRing& sub, std::span<const std::int64_t> a, std::span<std::int64_t> out) const;

    CyclotomicNumber to_number(std::span<const std::int64_t> a) const;
    // Integral coefficients of alpha; alpha must have conductor dividing n.
    std::vector<std::int64_t> from_number(const CyclotomicNumber& alpha) const;

private:
    int n_;
    int phi_;
    const CycloContext* ctx_;
};

std::int64_t checked_narrow(__int128 v);

}  // namespace gjsum::cyclo
