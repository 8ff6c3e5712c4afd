#include "cyclo/prime_splitting.hpp"

#include <numeric>

#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::cyclo {

namespace {

constexpr int kMaxPrecisionDoublings = 8;

using RingElem = std::vector<Integer>;

// Arithmetic in (Z/p^M)[t]/(P(t)) for a monic P of degree f.
class TruncatedRing {
public:
    TruncatedRing(const std::vector<std::uint32_t>& modulus, Integer pm)
        : f_(static_cast<int>(modulus.size()) - 1), pm_(std::move(pm)) {
        for (auto c : modulus) modulus_.emplace_back(static_cast<unsigned long>(c));
    }

    RingElem one() const {
        RingElem out(f_);
        out[0] = 1;
        return out;
    }

    RingElem mul(const RingElem& a, const RingElem& b) const {
        std::vector<Integer> prod(2 * f_ - 1);
        for (int i = 0; i < f_; ++i) {
            if (sgn(a[i]) == 0) continue;
            for (int j = 0; j < f_; ++j) mpz_addmul(prod[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
        for (int i = 2 * f_ - 2; i >= f_; --i) {
            if (sgn(prod[i]) == 0) continue;
            Integer c = prod[i];
            for (int j = 0; j <= f_; ++j) prod[i - f_ + j] -= c * modulus_[j];
        }
        RingElem out(f_);
        for (int i = 0; i < f_; ++i) mpz_fdiv_r(out[i].get_mpz_t(), prod[i].get_mpz_t(), pm_.get_mpz_t());
        return out;
    }

    RingElem pow(RingElem base, std::uint64_t e) const {
        RingElem result = one();
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            e >>= 1;
            if (e > 0) base = mul(base, base);
        }
        return result;
    }

private:
    int f_;
    Integer pm_;
    std::vector<Integer> modulus_;
};

int padic_order(const Integer& value, const Integer& p) {
    Integer tmp = value;
    return static_cast<int>(mpz_remove(tmp.get_mpz_t(), tmp.get_mpz_t(), p.get_mpz_t()));
}

}  // namespace

PrimeSplitting::PrimeSplitting(int d, std::uint64_t p, const ff::FieldOptions& options, int expected_weight)
    : d_(d), p_(p) {
    if (d < 1) fail(ErrorCode::BadModulus, "d must be positive");
    if (!nt::is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (d % p == 0) fail(ErrorCode::BadParameters, "p must not divide d");
    f_ = static_cast<int>(nt::multiplicative_order(p % d, d));
    field_ = ff::make_field(p, f_, options);
    q_ = field_->order();
    omega_ = field_->exp((q_ - 1) / d);

    coset_of_.assign(d, -1);
    std::uint64_t pk = 1 % d;
    for (int i = 0; i < f_; ++i) {
        decomposition_.push_back(static_cast<int>(pk));
        pk = pk * p % d;
    }
    for (int h : nt::units_mod(d)) {
        if (coset_of_[h] >= 0) continue;
        const int index = static_cast<int>(coset_reps_.size());
        coset_reps_.push_back(h);
        for (int x : decomposition_) coset_of_[static_cast<std::int64_t>(h) * x % d] = index;
    }
    precision_ = std::max(1, expected_weight) * f_ + 4;
}

int PrimeSplitting::coset_index(std::int64_t h) const {
    const auto hn = nt::mod(h, d_);
    if (std::gcd<std::int64_t, std::int64_t>(hn, d_) != 1 && d_ != 1) {
        fail(ErrorCode::NotCoprime, std::to_string(h) + " is not a unit modulo " + std::to_string(d_));
    }
    return coset_of_[hn];
}

const TeichmuellerLift& PrimeSplitting::lift(int precision) const {
    std::lock_guard lock(lift_mutex_);
    auto& slot = lifts_[precision];
    if (slot) return *slot;
    Integer pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), p_, precision);
    TruncatedRing ring(field_->modulus(), pm);
    RingElem x(f_);
    auto digits = field_->coefficients(omega_);
    for (int i = 0; i < f_; ++i) x[i] = static_cast<unsigned long>(digits[i]);
    // x^(q^(M-1)) agrees with the Teichmueller representative modulo p^M.
    for (int i = 1; i < precision; ++i) x = ring.pow(x, q_);
    auto lift = std::make_unique<TeichmuellerLift>();
    lift->precision = precision;
    lift->modulus = pm;
    lift->zeta_images.reserve(d_);
    RingElem y = ring.one();
    for (int e = 0; e < d_; ++e) {
        lift->zeta_images.push_back(y);
        y = ring.mul(y, x);
    }
    if (y != ring.one()) fail(ErrorCode::Internal, "lifted root of unity has wrong order");
    slot = std::move(lift);
    return *slot;
}

std::optional<int> PrimeSplitting::try_valuation(std::span<const Integer> nums, int exponent_scale, std::int64_t h,
                                                 const TeichmuellerLift& lift) const {
    const std::int64_t hinv = d_ == 1 ? 0 : *nt::inverse_mod(h, d_);
    RingElem acc(f_);
    for (std::size_t i = 0; i < nums.size(); ++i) {
        if (sgn(nums[i]) == 0) continue;
        const auto e = static_cast<std::size_t>(
            nt::mod(static_cast<std::int64_t>(i) * exponent_scale % d_ * hinv, d_));
        const auto& z = lift.zeta_images[e];
        for (int j = 0; j < f_; ++j) mpz_addmul(acc[j].get_mpz_t(), nums[i].get_mpz_t(), z[j].get_mpz_t());
    }
    const Integer p = static_cast<unsigned long>(p_);
    std::optional<int> best;
    for (auto& c : acc) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), lift.modulus.get_mpz_t());
        if (sgn(c) == 0) continue;
        int v = padic_order(c, p);
        if (!best || v < *best) best = v;
    }
    return best;
}

int PrimeSplitting::integral_valuation(std::span<const Integer> nums, int exponent_scale, std::int64_t h) const {
    coset_index(h);
    bool nonzero = false;
    for (const auto& c : nums) nonzero = nonzero || sgn(c) != 0;
    if (!nonzero) fail(ErrorCode::ZeroArgument, "valuation of zero");
    int precision = precision_;
    for (int attempt = 0; attempt <= kMaxPrecisionDoublings; ++attempt, precision *= 2) {
        if (auto v = try_valuation(nums, exponent_scale, h, lift(precision))) return *v;
    }
    fail(ErrorCode::PrecisionExceeded, "p-adic precision cap reached");
}

int PrimeSplitting::valuation(const CyclotomicNumber& alpha, std::int64_t h) const {
    const CyclotomicNumber a = (d_ % alpha.conductor() == 0) ? alpha : cast_conductor(alpha, d_);
    const Integer p = static_cast<unsigned long>(p_);
    return integral_valuation(a.numerators(), d_ / a.conductor(), h) - padic_order(a.denominator(), p);
}

std::vector<int> PrimeSplitting::valuations(const CyclotomicNumber& alpha) const {
    std::vector<int> out;
    out.reserve(coset_reps_.size());
    for (int h : coset_reps_) out.push_back(valuation(alpha, h));
    return out;
}

std::vector<int> PrimeSplitting::valuations(std::span<const std::int64_t> coeffs) const {
    std::vector<Integer> nums;
    nums.reserve(coeffs.size());
    for (auto c : coeffs) nums.emplace_back(static_cast<long>(c));
    std::vector<int> out;
    out.reserve(coset_reps_.size());
    for (int h : coset_reps_) out.push_back(integral_valuation(nums, 1, h));
    return out;
}

SplittingPtr make_splitting(int d, std::uint64_t p, const ff::FieldOptions& options, int expected_weight) {
    return std::make_shared<const PrimeSplitting>(d, p, options, expected_weight);
}

int padic_valuation(const CyclotomicNumber& alpha, const PrimeSplitting& split, std::int64_t h) {
    return split.valuation(alpha, h);
}

}  // namespace gjsum::cyclo
