#include "sums/sums.hpp"

#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::sums {

using chars::MultiplicativeCharacter;
using cyclo::CyclotomicNumber;
using ff::Elem;

namespace {

std::uint64_t checked_power_count(std::uint64_t base, int exp, std::uint64_t budget) {
    auto total = nt::checked_pow(base, static_cast<unsigned>(exp), budget);
    if (!total) fail(ErrorCode::BudgetExceeded, "enumeration exceeds the term budget");
    return *total;
}

// Calls visit(keys) for every tuple of nonzero m_i summing to c, keys[i] = power_index(m_i).
template <class Visit>
void for_each_tuple(const chars::RootsOfUnity& mu, int n, Elem c, std::uint64_t budget, Visit&& visit) {
    const auto& k = *mu.field();
    const auto q = k.order();
    checked_power_count(q - 1, n - 1, budget);
    std::vector<int> index(q);
    for (Elem m = 1; m < q; ++m) index[m] = mu.power_index(m);

    std::vector<int> keys(n);
    std::vector<Elem> partial(n, 0);
    std::vector<Elem> current(n, 1);
    int level = 0;
    // Depth-first odometer over m_1..m_{n-1}; partial[i] = m_1 + ... + m_i.
    while (level >= 0) {
        if (level == n - 1) {
            const Elem last = k.sub(c, n >= 2 ? partial[n - 2] : 0);
            if (last != 0) {
                keys[n - 1] = index[last];
                visit(std::span<const int>(keys));
            }
            --level;
            if (level >= 0) ++current[level];
            continue;
        }
        if (current[level] >= q) {
            current[level] = 1;
            --level;
            if (level >= 0) ++current[level];
            continue;
        }
        const Elem m = current[level];
        keys[level] = index[m];
        partial[level] = k.add(level == 0 ? 0 : partial[level - 1], m);
        ++level;
    }
}

void require_same_group(std::span<const MultiplicativeCharacter> chis) {
    const auto& first = chis.front();
    for (const auto& chi : chis) {
        if (chi.field->order() != first.field->order() || chi.field->p() != first.field->p()) {
            fail(ErrorCode::FieldMismatch, "characters live on different fields");
        }
        if (chi.d != first.d || chi.omega != first.omega) fail(ErrorCode::BadDivisor, "characters use different mu_d");
    }
}

}  // namespace

std::vector<std::int64_t> gauss_histogram(const chars::AdditiveCharacter& psi, const MultiplicativeCharacter& chi) {
    if (psi.trivial()) fail(ErrorCode::TrivialAdditive, "Gauss sum needs a nontrivial additive character");
    if (psi.field->order() != chi.field->order() || psi.field->p() != chi.field->p()) {
        fail(ErrorCode::FieldMismatch, "characters live on different fields");
    }
    const auto& k = *psi.field;
    const auto roots = chi.roots();
    const std::int64_t p = k.p();
    const std::int64_t d = chi.d;
    const std::int64_t n = p * d;
    std::vector<std::int64_t> hist(static_cast<std::size_t>(n), 0);
    // zeta_p^x zeta_d^y = zeta_{pd}^(x d + y p)
    for (Elem m = 1; m < k.order(); ++m) {
        const std::int64_t x = psi.exponent(m);
        const std::int64_t y = static_cast<std::int64_t>(chi.a) * roots.power_index(m) % d;
        hist[static_cast<std::size_t>((x * d + y * p) % n)] -= 1;
    }
    return hist;
}

CyclotomicNumber gauss_sum(const chars::AdditiveCharacter& psi, const MultiplicativeCharacter& chi) {
    const auto hist = gauss_histogram(psi, chi);
    return CyclotomicNumber::from_histogram(static_cast<int>(hist.size()), hist);
}

CyclotomicNumber jacobi_sum(std::span<const MultiplicativeCharacter> chis, std::uint64_t budget) {
    if (chis.size() < 2) fail(ErrorCode::ArityTooSmall, "Jacobi sum needs at least two characters");
    require_same_group(chis);
    std::vector<int> avec;
    for (const auto& chi : chis) avec.push_back(chi.a);
    return jacobi_sum(chis.front().roots(), avec, budget);
}

CyclotomicNumber jacobi_sum(const chars::RootsOfUnity& mu, std::span<const int> avec, std::uint64_t budget) {
    const int n = static_cast<int>(avec.size());
    if (n < 2) fail(ErrorCode::ArityTooSmall, "Jacobi sum needs at least two characters");
    const int d = mu.d();
    std::vector<std::int64_t> hist(static_cast<std::size_t>(d), 0);
    std::vector<std::int64_t> a(avec.begin(), avec.end());
    for_each_tuple(mu, n, 1, budget, [&](std::span<const int> keys) {
        std::int64_t e = 0;
        for (int i = 0; i < n; ++i) e += a[i] * keys[i];
        hist[static_cast<std::size_t>(nt::mod(e, d))] += 1;
    });
    if (n % 2 == 0) {
        for (auto& h : hist) h = -h;
    }
    return CyclotomicNumber::from_histogram(d, hist);
}

std::vector<std::int64_t> tuple_counts(const chars::RootsOfUnity& mu, int n, Elem c, std::uint64_t budget) {
    if (n < 1) fail(ErrorCode::ArityTooSmall, "arity must be positive");
    const int d = mu.d();
    const auto size = checked_power_count(static_cast<std::uint64_t>(d), n, budget);
    std::vector<std::int64_t> counts(size, 0);
    for_each_tuple(mu, n, c, budget, [&](std::span<const int> keys) { counts[tuple_index(keys, d)] += 1; });
    return counts;
}

CyclotomicNumber jacobi_from_counts(int d, int n, std::span<const std::int64_t> counts, std::span<const int> avec) {
    std::vector<std::int64_t> hist(static_cast<std::size_t>(d), 0);
    std::vector<int> keys(n, 0);
    for (std::uint64_t i = 0; i < counts.size(); ++i) {
        if (counts[i] != 0) {
            std::int64_t e = 0;
            for (int j = 0; j < n; ++j) e += static_cast<std::int64_t>(avec[j]) * keys[j];
            hist[static_cast<std::size_t>(nt::mod(e, d))] += counts[i];
        }
        for (int j = n - 1; j >= 0; --j) {
            if (++keys[j] < d) break;
            keys[j] = 0;
        }
    }
    if (n % 2 == 0) {
        for (auto& h : hist) h = -h;
    }
    return CyclotomicNumber::from_histogram(d, hist);
}

std::uint64_t tuple_index(std::span<const int> keys, int d) {
    std::uint64_t index = 0;
    for (int k : keys) index = index * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(k);
    return index;
}

std::vector<int> tuple_keys(std::uint64_t index, int d, int n) {
    std::vector<int> keys(n);
    for (int j = n - 1; j >= 0; --j) {
        keys[j] = static_cast<int>(index % static_cast<std::uint64_t>(d));
        index /= static_cast<std::uint64_t>(d);
    }
    return keys;
}

}  // namespace gjsum::sums
