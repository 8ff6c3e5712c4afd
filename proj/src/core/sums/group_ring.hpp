#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <span>
#include <vector>

#include "chars/characters.hpp"
#include "cyclo/cyclotomic.hpp"
#include "report/check_report.hpp"

namespace gjsum::sums {

using GroupKey = std::vector<std::int64_t>;

enum class GroupKind { FieldTimesRoots, RootsPower, Units };

// k x mu_d keyed (x, j) with m = omega^j; mu_d^n keyed by exponent tuples; (Z/d)^* keyed (h).
class GroupShape {
public:
    static GroupShape field_times_roots(ff::FieldPtr field, int d);
    static GroupShape roots_power(int d, int n);
    static GroupShape units(int d);

    GroupKind kind() const noexcept { return kind_; }
    const ff::FieldPtr& field() const noexcept { return field_; }
    int d() const noexcept { return d_; }
    int n() const noexcept { return n_; }
    std::uint64_t order() const;

    GroupKey identity() const;
    GroupKey combine(const GroupKey& a, const GroupKey& b) const;
    std::vector<GroupKey> elements() const;
    void validate(const GroupKey& key) const;

    friend bool operator==(const GroupShape& a, const GroupShape& b);

private:
    GroupShape(GroupKind kind, ff::FieldPtr field, int d, int n);

    GroupKind kind_;
    ff::FieldPtr field_;
    int d_;
    int n_;
};

class GroupRingElement {
public:
    using Terms = std::map<GroupKey, cyclo::CyclotomicNumber>;

    explicit GroupRingElement(GroupShape shape);
    static GroupRingElement unit(GroupShape shape);

    const GroupShape& shape() const noexcept { return shape_; }
    const Terms& terms() const noexcept { return terms_; }
    cyclo::CyclotomicNumber coefficient(const GroupKey& key) const;
    void add_term(const GroupKey& key, const cyclo::CyclotomicNumber& value);

    GroupRingElement& operator+=(const GroupRingElement& other);
    GroupRingElement& operator-=(const GroupRingElement& other);
    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    // Convolution product.
    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b);

    GroupRingElement scaled(const cyclo::CyclotomicNumber& factor) const;
    // Image under the map sending every group element to 1.
    cyclo::CyclotomicNumber augmentation() const;
    // Push-forward along mu_d -> mu_{d'}, m -> m^(d/d') on every mu_d coordinate.
    GroupRingElement degenerate(int d_prime) const;

    nlohmann::ordered_json to_json() const;

private:
    void check_shape(const GroupRingElement& other) const;

    GroupShape shape_;
    Terms terms_;
};

// Character parameters: (c, a) for k x mu_d, the exponent vector for mu_d^n.
cyclo::CyclotomicNumber character_value(const GroupShape& shape, std::span<const std::int64_t> params,
                                        const GroupKey& key);
// e^chi = (1/|G|) sum_g conj(chi(g)) g
GroupRingElement projector(const GroupShape& shape, std::span<const std::int64_t> params);
std::vector<std::vector<std::int64_t>> all_characters(const GroupShape& shape);

// -sum_{m != 0} (m, m^((q-1)/d))
GroupRingElement gauss_element(const ff::FieldPtr& field, int d);
// (-1)^(n-1) sum over nonzero m_i with sum c of (m_1^((q-1)/d), ..., m_n^((q-1)/d))
GroupRingElement jacobi_element(const ff::FieldPtr& field, int d, int n, ff::Elem c);

inline constexpr std::uint64_t kDefaultLiteralBudget = 20'000'000;

// g_d e^(psi_c, chi_a) = g(psi_c, chi_a) e^(psi_c, chi_a)
CheckReport eigen_check(const ff::FieldPtr& field, int d, ff::Elem c, int a);
// j_d<c> e^chi = chi_1...chi_n(c^((q-1)/d)) j(chi) e^chi. Compared coefficientwise when
// |support| |G| phi(d) fits the literal budget, otherwise through the scalar by which each
// translate g acts on e^chi.
CheckReport eigen_check_jacobi(const ff::FieldPtr& field, int d, int n, ff::Elem c, std::span<const int> avec,
                               std::uint64_t literal_budget = kDefaultLiteralBudget);

}  // namespace gjsum::sums
