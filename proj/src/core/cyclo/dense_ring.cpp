#include "cyclo/dense_ring.hpp"

#include <limits>

#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::cyclo {

std::int64_t checked_narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        fail(ErrorCode::ArithmeticOverflow, "coefficient exceeds 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

DenseRing::DenseRing(int n) : n_(n), ctx_(&context(n)) { phi_ = ctx_->degree(); }

void DenseRing::from_histogram(std::span<const std::int64_t> hist, std::span<std::int64_t> out) const {
    std::vector<__int128> acc(phi_, 0);
    for (int e = 0; e < n_; ++e) {
        if (hist[e] == 0) continue;
        auto row = ctx_->power(e);
        for (int i = 0; i < phi_; ++i) acc[i] += static_cast<__int128>(hist[e]) * row[i];
    }
    for (int i = 0; i < phi_; ++i) out[i] = checked_narrow(acc[i]);
}

void DenseRing::multiply(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                         std::span<std::int64_t> out) const {
    thread_local std::vector<__int128> acc;
    thread_local std::vector<std::int64_t> high;
    acc.assign(2 * phi_, 0);
    high.resize(phi_);
    for (int i = 0; i < phi_; ++i) {
        if (a[i] == 0) continue;
        const __int128 ai = a[i];
        for (int j = 0; j < phi_; ++j) acc[i + j] += ai * b[j];
    }
    for (int e = phi_; e < 2 * phi_ - 1; ++e) high[e - phi_] = checked_narrow(acc[e]);
    for (int e = phi_; e < 2 * phi_ - 1; ++e) {
        const std::int64_t c = high[e - phi_];
        if (c == 0) continue;
        auto row = ctx_->power(e);
        for (int i = 0; i < phi_; ++i) acc[i] += static_cast<__int128>(c) * row[i];
    }
    for (int i = 0; i < phi_; ++i) out[i] = checked_narrow(acc[i]);
}

void DenseRing::multiply_zeta(std::span<const std::int64_t> a, std::int64_t e, std::span<std::int64_t> out) const {
    const std::int64_t shift = nt::mod(e, n_);
    std::vector<__int128> acc(phi_, 0);
    for (int i = 0; i < phi_; ++i) {
        if (a[i] == 0) continue;
        auto row = ctx_->power(static_cast<int>((i + shift) % n_));
        for (int t = 0; t < phi_; ++t) acc[t] += static_cast<__int128>(a[i]) * row[t];
    }
    for (int t = 0; t < phi_; ++t) out[t] = checked_narrow(acc[t]);
}

void DenseRing::galois(std::span<const std::int64_t> a, std::int64_t h, std::span<std::int64_t> out) const {
    const std::int64_t hn = nt::mod(h, n_);
    std::vector<__int128> acc(phi_, 0);
    for (int i = 0; i < phi_; ++i) {
        if (a[i] == 0) continue;
        auto row = ctx_->power(static_cast<int>(i * hn % n_));
        for (int t = 0; t < phi_; ++t) acc[t] += static_cast<__int128>(a[i]) * row[t];
    }
    for (int t = 0; t < phi_; ++t) out[t] = checked_narrow(acc[t]);
}

void DenseRing::lift_from(const DenseRing& sub, std::span<const std::int64_t> a, std::span<std::int64_t> out) const {
    if (n_ % sub.n_ != 0) fail(ErrorCode::InvalidArgument, "conductor does not divide");
    const int step = n_ / sub.n_;
    std::vector<__int128> acc(phi_, 0);
    for (int i = 0; i < sub.phi_; ++i) {
        if (a[i] == 0) continue;
        auto row = ctx_->power(i * step);
        for (int t = 0; t < phi_; ++t) acc[t] += static_cast<__int128>(a[i]) * row[t];
    }
    for (int t = 0; t < phi_; ++t) out[t] = checked_narrow(acc[t]);
}

CyclotomicNumber DenseRing::to_number(std::span<const std::int64_t> a) const {
    std::vector<Integer> nums(phi_);
    for (int i = 0; i < phi_; ++i) nums[i] = static_cast<long>(a[i]);
    return CyclotomicNumber::from_numerators(n_, std::move(nums));
}

std::vector<std::int64_t> DenseRing::from_number(const CyclotomicNumber& alpha) const {
    const CyclotomicNumber a = cast_conductor(alpha, n_);
    if (a.denominator() != 1) fail(ErrorCode::InvalidArgument, "element is not integral");
    std::vector<std::int64_t> out(phi_);
    for (int i = 0; i < phi_; ++i) {
        if (!a.numerators()[i].fits_slong_p()) fail(ErrorCode::ArithmeticOverflow, "coefficient exceeds 64 bits");
        out[i] = a.numerators()[i].get_si();
    }
    return out;
}

}  // namespace gjsum::cyclo
