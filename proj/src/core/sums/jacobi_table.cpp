#include "sums/jacobi_table.hpp"

#include "cyclo/dense_ring.hpp"
#include "sums/sums.hpp"
#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::sums {

using cyclo::CyclotomicNumber;
using ff::Elem;

namespace {

std::uint64_t power_size(int d, int n) {
    auto size = nt::checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n), std::uint64_t{1} << 28);
    if (!size) fail(ErrorCode::BudgetExceeded, "tuple table too large");
    return *size;
}

// table[j * size + i] = index of (k_1 - j, ..., k_len - j) for i = index of (k_1, ..., k_len)
std::vector<std::uint32_t> shift_table(int d, int len) {
    const auto size = power_size(d, len);
    std::vector<std::uint32_t> table(size * static_cast<std::uint64_t>(d));
    for (std::uint64_t i = 0; i < size; ++i) {
        auto keys = tuple_keys(i, d, len);
        for (int j = 0; j < d; ++j) {
            std::uint64_t out = 0;
            for (int k : keys) out = out * d + static_cast<std::uint64_t>(nt::mod(k - j, d));
            table[static_cast<std::uint64_t>(j) * size + i] = static_cast<std::uint32_t>(out);
        }
    }
    return table;
}

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) fail(ErrorCode::ArithmeticOverflow, "tuple count overflows");
    return out;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) fail(ErrorCode::ArithmeticOverflow, "tuple count overflows");
    return out;
}

}  // namespace

JacobiTable::JacobiTable(const chars::RootsOfUnity& mu)
    : mu_(mu), d_(mu.d()), q_(mu.field()->order()), cross_(static_cast<std::size_t>(d_) * d_, 0) {
    const auto& k = *mu_.field();
    minus_one_ = mu_.power_index(k.neg(1));
    // codes 0 and 1 are the field elements 0 and 1
    for (Elem m = 2; m < q_; ++m) {
        ++cross_[static_cast<std::size_t>(mu_.power_index(m)) * d_ + mu_.power_index(k.sub(1, m))];
    }
    one_.resize(2);
    zero_.resize(2);
    one_[1].assign(static_cast<std::size_t>(d_), 0);
    one_[1][0] = 1;
    zero_[1].assign(static_cast<std::size_t>(d_), 0);
}

void JacobiTable::extend(int n) {
    if (n < 1) fail(ErrorCode::ArityTooSmall, "arity must be positive");
    const auto class_size = static_cast<std::int64_t>((q_ - 1) / static_cast<std::uint64_t>(d_));
    while (static_cast<int>(one_.size()) <= n) {
        const int m = static_cast<int>(one_.size());
        const auto prev_size = power_size(d_, m - 1);
        const auto shifts = shift_table(d_, m - 1);
        const auto& prev_one = one_[m - 1];
        const auto& prev_zero = zero_[m - 1];
        std::vector<std::int64_t> next_one(prev_size * d_, 0), next_zero(prev_size * d_, 0);
        for (std::uint64_t i = 0; i < prev_size; ++i) {
            for (int t = 0; t < d_; ++t) {
                std::int64_t one = t == 0 ? prev_zero[i] : 0;
                for (int s = 0; s < d_; ++s) {
                    const auto c = cross(t, s);
                    if (c != 0) one = add_checked(one, mul_checked(c, prev_one[shifts[s * prev_size + i]]));
                }
                next_one[i * d_ + t] = one;
                const int shift = static_cast<int>((minus_one_ + t) % d_);
                next_zero[i * d_ + t] = mul_checked(class_size, prev_one[shifts[shift * prev_size + i]]);
            }
        }
        one_.push_back(std::move(next_one));
        zero_.push_back(std::move(next_zero));
    }
}

const std::vector<std::int64_t>& JacobiTable::counts_one(int n) {
    extend(n);
    return one_[n];
}

const std::vector<std::int64_t>& JacobiTable::counts_zero(int n) {
    extend(n);
    return zero_[n];
}

std::vector<std::int64_t> JacobiTable::counts(int n, Elem c) {
    if (c == 0) return counts_zero(n);
    const auto& base = counts_one(n);
    // tuples summing to c are c times tuples summing to 1
    const int j = mu_.power_index(c);
    const auto shifts = shift_table(d_, n);
    std::vector<std::int64_t> out(base.size());
    for (std::uint64_t i = 0; i < base.size(); ++i) out[i] = base[shifts[j * base.size() + i]];
    return out;
}

std::vector<std::int64_t> JacobiTable::diagonal_counts(int n) const {
    if (n < 1) fail(ErrorCode::ArityTooSmall, "arity must be positive");
    const auto class_size = static_cast<std::int64_t>((q_ - 1) / static_cast<std::uint64_t>(d_));
    std::vector<std::int64_t> one(static_cast<std::size_t>(d_), 0), zero(static_cast<std::size_t>(d_), 0);
    one[0] = 1;
    for (int m = 2; m <= n; ++m) {
        std::vector<std::int64_t> next_one(zero), next_zero(static_cast<std::size_t>(d_), 0);
        // the m-1 earlier keys each shift by key(c') when rescaling their sum to 1
        const std::int64_t w = m - 1;
        for (int t = 0; t < d_; ++t) {
            for (int s = 0; s < d_; ++s) {
                const auto c = cross(t, s);
                if (c == 0) continue;
                for (int u = 0; u < d_; ++u) {
                    const auto target = static_cast<std::size_t>(nt::mod(u + t + w * s, d_));
                    next_one[target] = add_checked(next_one[target], mul_checked(c, one[u]));
                }
            }
            for (int u = 0; u < d_; ++u) {
                const auto target = static_cast<std::size_t>(nt::mod(u + t + w * (minus_one_ + t), d_));
                next_zero[target] = add_checked(next_zero[target], mul_checked(class_size, one[u]));
            }
        }
        one = std::move(next_one);
        zero = std::move(next_zero);
    }
    return one;
}

CyclotomicNumber JacobiTable::diagonal_jacobi(int a, int n) const {
    if (n < 2) fail(ErrorCode::ArityTooSmall, "Jacobi sum needs at least two characters");
    const auto counts = diagonal_counts(n);
    std::vector<std::int64_t> hist(static_cast<std::size_t>(d_), 0);
    for (int s = 0; s < d_; ++s) {
        auto& slot = hist[static_cast<std::size_t>(nt::mod(static_cast<std::int64_t>(a) * s, d_))];
        slot = add_checked(slot, n % 2 == 0 ? -counts[s] : counts[s]);
    }
    return CyclotomicNumber::from_histogram(d_, hist);
}

const std::vector<std::int64_t>& JacobiTable::values(int n) {
    if (n < 2) fail(ErrorCode::ArityTooSmall, "Jacobi sum needs at least two characters");
    auto it = values_.find(n);
    if (it == values_.end()) {
        it = values_.emplace(n, exponent_transform(d_, n, counts_one(n), n % 2 == 0)).first;
    }
    return it->second;
}

CyclotomicNumber JacobiTable::value(std::span<const int> avec) {
    const int n = static_cast<int>(avec.size());
    const auto& all = values(n);
    std::vector<int> keys(avec.size());
    for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = static_cast<int>(nt::mod(avec[i], d_));
    const auto phi = static_cast<std::size_t>(cyclo::context(d_).degree());
    const auto offset = tuple_index(keys, d_) * phi;
    std::vector<cyclo::Integer> nums;
    for (std::size_t i = 0; i < phi; ++i) nums.emplace_back(static_cast<long>(all[offset + i]));
    return CyclotomicNumber::from_numerators(d_, std::move(nums));
}

std::vector<std::int64_t> exponent_transform(int d, int n, std::span<const std::int64_t> counts, bool negate) {
    const auto size = power_size(d, n);
    if (counts.size() != size) fail(ErrorCode::InvalidArgument, "counts have the wrong size");
    const auto du = static_cast<std::uint64_t>(d);
    // Stage i turns coordinate k_i into a_i; entries are polynomials mod x^d - 1.
    std::vector<std::int64_t> current(size * du, 0), next;
    {
        const auto suffix = size / du;
        for (std::uint64_t k1 = 0; k1 < du; ++k1) {
            for (std::uint64_t s = 0; s < suffix; ++s) {
                const auto value = counts[k1 * suffix + s];
                if (value == 0) continue;
                for (std::uint64_t a1 = 0; a1 < du; ++a1) current[(a1 * suffix + s) * du + (a1 * k1) % du] += value;
            }
        }
    }
    for (int stage = 1; stage < n; ++stage) {
        next.assign(size * du, 0);
        const auto prefix = power_size(d, stage);
        const auto suffix = size / prefix / du;
        for (std::uint64_t pre = 0; pre < prefix; ++pre) {
            for (std::uint64_t ki = 0; ki < du; ++ki) {
                for (std::uint64_t ai = 0; ai < du; ++ai) {
                    const auto shift = (ai * ki) % du;
                    for (std::uint64_t s = 0; s < suffix; ++s) {
                        const std::int64_t* src = &current[((pre * du + ki) * suffix + s) * du];
                        std::int64_t* dst = &next[((pre * du + ai) * suffix + s) * du];
                        // dst[e] += src[e - shift]
                        for (std::uint64_t e = shift; e < du; ++e) dst[e] += src[e - shift];
                        for (std::uint64_t e = 0; e < shift; ++e) dst[e] += src[e + du - shift];
                    }
                }
            }
        }
        current.swap(next);
    }
    next.clear();
    next.shrink_to_fit();
    const auto& ctx = cyclo::context(d);
    const auto phi = static_cast<std::uint64_t>(ctx.degree());
    std::vector<std::int64_t> out(size * phi);
    std::vector<__int128> acc(phi);
    for (std::uint64_t i = 0; i < size; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::uint64_t e = 0; e < du; ++e) {
            const auto v = current[i * du + e];
            if (v == 0) continue;
            const auto row = ctx.power(static_cast<int>(e));
            for (std::uint64_t t = 0; t < phi; ++t) acc[t] += static_cast<__int128>(v) * row[t];
        }
        for (std::uint64_t t = 0; t < phi; ++t) out[i * phi + t] = cyclo::checked_narrow(negate ? -acc[t] : acc[t]);
    }
    return out;
}

}  // namespace gjsum::sums
