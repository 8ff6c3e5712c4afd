#include "sums/group_ring.hpp"

#include <numeric>
#include <sstream>

#include "cyclo/dense_ring.hpp"
#include "sums/sums.hpp"
#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::sums {

using cyclo::CyclotomicNumber;
using ff::Elem;

GroupShape::GroupShape(GroupKind kind, ff::FieldPtr field, int d, int n)
    : kind_(kind), field_(std::move(field)), d_(d), n_(n) {}

GroupShape GroupShape::field_times_roots(ff::FieldPtr field, int d) {
    if (d < 1 || (field->order() - 1) % static_cast<std::uint64_t>(d) != 0) {
        fail(ErrorCode::BadDivisor, std::to_string(d) + " does not divide q-1");
    }
    return GroupShape(GroupKind::FieldTimesRoots, std::move(field), d, 1);
}

GroupShape GroupShape::roots_power(int d, int n) {
    if (d < 1) fail(ErrorCode::BadDivisor, "d must be positive");
    if (n < 1) fail(ErrorCode::ArityTooSmall, "arity must be positive");
    return GroupShape(GroupKind::RootsPower, nullptr, d, n);
}

GroupShape GroupShape::units(int d) {
    if (d < 1) fail(ErrorCode::BadDivisor, "d must be positive");
    return GroupShape(GroupKind::Units, nullptr, d, 1);
}

std::uint64_t GroupShape::order() const {
    switch (kind_) {
        case GroupKind::FieldTimesRoots: return field_->order() * static_cast<std::uint64_t>(d_);
        case GroupKind::RootsPower: {
            auto size = nt::checked_pow(static_cast<std::uint64_t>(d_), static_cast<unsigned>(n_));
            if (!size) fail(ErrorCode::ArithmeticOverflow, "group order overflows");
            return *size;
        }
        case GroupKind::Units: return nt::euler_phi(static_cast<std::uint64_t>(d_));
    }
    return 0;
}

GroupKey GroupShape::identity() const {
    switch (kind_) {
        case GroupKind::FieldTimesRoots: return {0, 0};
        case GroupKind::RootsPower: return GroupKey(static_cast<std::size_t>(n_), 0);
        case GroupKind::Units: return {1 % d_};
    }
    return {};
}

GroupKey GroupShape::combine(const GroupKey& a, const GroupKey& b) const {
    switch (kind_) {
        case GroupKind::FieldTimesRoots:
            return {static_cast<std::int64_t>(field_->add(static_cast<Elem>(a[0]), static_cast<Elem>(b[0]))),
                    (a[1] + b[1]) % d_};
        case GroupKind::RootsPower: {
            GroupKey out(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % d_;
            return out;
        }
        case GroupKind::Units: return {a[0] * b[0] % d_};
    }
    return {};
}

std::vector<GroupKey> GroupShape::elements() const {
    std::vector<GroupKey> out;
    switch (kind_) {
        case GroupKind::FieldTimesRoots:
            for (std::uint64_t x = 0; x < field_->order(); ++x) {
                for (int j = 0; j < d_; ++j) out.push_back({static_cast<std::int64_t>(x), j});
            }
            break;
        case GroupKind::RootsPower:
            for (std::uint64_t i = 0; i < order(); ++i) {
                auto keys = tuple_keys(i, d_, n_);
                out.emplace_back(keys.begin(), keys.end());
            }
            break;
        case GroupKind::Units:
            for (int h : nt::units_mod(d_)) out.push_back({h});
            break;
    }
    return out;
}

void GroupShape::validate(const GroupKey& key) const {
    bool ok = true;
    switch (kind_) {
        case GroupKind::FieldTimesRoots:
            ok = key.size() == 2 && key[0] >= 0 && static_cast<std::uint64_t>(key[0]) < field_->order() && key[1] >= 0 &&
                 key[1] < d_;
            break;
        case GroupKind::RootsPower:
            ok = key.size() == static_cast<std::size_t>(n_);
            for (auto k : key) ok = ok && k >= 0 && k < d_;
            break;
        case GroupKind::Units: ok = key.size() == 1 && key[0] >= 0 && key[0] < d_ && std::gcd<std::int64_t>(key[0], d_) == 1; break;
    }
    if (!ok) fail(ErrorCode::InvalidArgument, "key is not an element of the group");
}

bool operator==(const GroupShape& a, const GroupShape& b) {
    if (a.kind_ != b.kind_ || a.d_ != b.d_ || a.n_ != b.n_) return false;
    if (a.kind_ != GroupKind::FieldTimesRoots) return true;
    return a.field_->p() == b.field_->p() && a.field_->degree() == b.field_->degree();
}

GroupRingElement::GroupRingElement(GroupShape shape) : shape_(std::move(shape)) {}

GroupRingElement GroupRingElement::unit(GroupShape shape) {
    GroupRingElement out(std::move(shape));
    out.add_term(out.shape_.identity(), CyclotomicNumber::from_integer(1, 1));
    return out;
}

CyclotomicNumber GroupRingElement::coefficient(const GroupKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? CyclotomicNumber() : it->second;
}

void GroupRingElement::add_term(const GroupKey& key, const CyclotomicNumber& value) {
    shape_.validate(key);
    auto [it, inserted] = terms_.try_emplace(key, value);
    if (!inserted) it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
}

void GroupRingElement::check_shape(const GroupRingElement& other) const {
    if (!(shape_ == other.shape_)) fail(ErrorCode::FieldMismatch, "group ring elements over different groups");
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& other) {
    check_shape(other);
    for (const auto& [key, value] : other.terms_) add_term(key, value);
    return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& other) {
    check_shape(other);
    for (const auto& [key, value] : other.terms_) add_term(key, -value);
    return *this;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    a.check_shape(b);
    GroupRingElement out(a.shape_);
    for (const auto& [ka, va] : a.terms_) {
        for (const auto& [kb, vb] : b.terms_) out.add_term(a.shape_.combine(ka, kb), va * vb);
    }
    return out;
}

bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    if (!(a.shape_ == b.shape_) || a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [key, value] : a.terms_) {
        if (key != it->first || !(value == it->second)) return false;
        ++it;
    }
    return true;
}

GroupRingElement GroupRingElement::scaled(const CyclotomicNumber& factor) const {
    GroupRingElement out(shape_);
    for (const auto& [key, value] : terms_) out.add_term(key, value * factor);
    return out;
}

CyclotomicNumber GroupRingElement::augmentation() const {
    CyclotomicNumber total;
    for (const auto& [key, value] : terms_) total += value;
    return total;
}

GroupRingElement GroupRingElement::degenerate(int d_prime) const {
    const int d = shape_.d();
    if (d_prime < 1 || d % d_prime != 0) fail(ErrorCode::BadDivisor, "degeneration needs d' | d");
    if (shape_.kind() == GroupKind::Units) fail(ErrorCode::BadParameters, "degeneration is defined on mu_d factors");
    // With omega' = omega^(d/d'), (omega^j)^(d/d') = omega'^j.
    auto shape = shape_.kind() == GroupKind::FieldTimesRoots ? GroupShape::field_times_roots(shape_.field(), d_prime)
                                                             : GroupShape::roots_power(d_prime, shape_.n());
    GroupRingElement out(shape);
    for (const auto& [key, value] : terms_) {
        GroupKey image = key;
        const std::size_t start = shape_.kind() == GroupKind::FieldTimesRoots ? 1 : 0;
        for (std::size_t i = start; i < image.size(); ++i) image[i] %= d_prime;
        out.add_term(image, value);
    }
    return out;
}

nlohmann::ordered_json GroupRingElement::to_json() const {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [key, value] : terms_) {
        std::ostringstream name;
        name << '(';
        for (std::size_t i = 0; i < key.size(); ++i) name << (i ? "," : "") << key[i];
        name << ')';
        out[name.str()] = value.to_string();
    }
    return out;
}

namespace {

// Exponent e with chi(key) = zeta_N^e, together with N.
std::pair<int, std::int64_t> character_exponent(const GroupShape& shape, std::span<const std::int64_t> params,
                                                const GroupKey& key) {
    const int d = shape.d();
    switch (shape.kind()) {
        case GroupKind::FieldTimesRoots: {
            if (params.size() != 2) fail(ErrorCode::InvalidArgument, "k x mu_d characters take (c, a)");
            const auto& k = *shape.field();
            const std::int64_t p = k.p();
            const auto x = static_cast<Elem>(key[0]);
            const std::int64_t t = k.trace_to_prime(k.mul(static_cast<Elem>(params[0]), x));
            return {static_cast<int>(p * d), t * d + nt::mod(params[1] * key[1], d) * p};
        }
        case GroupKind::RootsPower: {
            if (params.size() != static_cast<std::size_t>(shape.n())) {
                fail(ErrorCode::InvalidArgument, "mu_d^n characters take n exponents");
            }
            std::int64_t e = 0;
            for (std::size_t i = 0; i < params.size(); ++i) e += nt::mod(params[i], d) * key[i];
            return {d, nt::mod(e, d)};
        }
        case GroupKind::Units: break;
    }
    fail(ErrorCode::BadParameters, "characters of (Z/d)^* are not supported");
}

}  // namespace

CyclotomicNumber character_value(const GroupShape& shape, std::span<const std::int64_t> params, const GroupKey& key) {
    shape.validate(key);
    auto [n, e] = character_exponent(shape, params, key);
    return CyclotomicNumber::zeta_power(n, e);
}

GroupRingElement projector(const GroupShape& shape, std::span<const std::int64_t> params) {
    if (shape.kind() == GroupKind::FieldTimesRoots && !shape.field()->contains(static_cast<Elem>(params[0]))) {
        fail(ErrorCode::FieldMismatch, "twist is not a field element");
    }
    const cyclo::Rational inv_order(1, static_cast<unsigned long>(shape.order()));
    GroupRingElement out(shape);
    for (const auto& key : shape.elements()) {
        auto [n, e] = character_exponent(shape, params, key);
        out.add_term(key, CyclotomicNumber::zeta_power(n, -e).scaled(inv_order));
    }
    return out;
}

std::vector<std::vector<std::int64_t>> all_characters(const GroupShape& shape) {
    std::vector<std::vector<std::int64_t>> out;
    switch (shape.kind()) {
        case GroupKind::FieldTimesRoots:
            for (std::uint64_t c = 0; c < shape.field()->order(); ++c) {
                for (int a = 0; a < shape.d(); ++a) out.push_back({static_cast<std::int64_t>(c), a});
            }
            break;
        case GroupKind::RootsPower:
            for (const auto& key : shape.elements()) out.push_back(key);
            break;
        case GroupKind::Units: fail(ErrorCode::BadParameters, "characters of (Z/d)^* are not supported");
    }
    return out;
}

GroupRingElement gauss_element(const ff::FieldPtr& field, int d) {
    auto shape = GroupShape::field_times_roots(field, d);
    chars::RootsOfUnity mu(field, d);
    GroupRingElement out(shape);
    const auto minus_one = CyclotomicNumber::from_integer(1, -1);
    for (Elem m = 1; m < field->order(); ++m) out.add_term({m, mu.power_index(m)}, minus_one);
    return out;
}

GroupRingElement jacobi_element(const ff::FieldPtr& field, int d, int n, Elem c) {
    if (n < 2) fail(ErrorCode::ArityTooSmall, "Jacobi element needs n >= 2");
    if (!field->contains(c)) fail(ErrorCode::FieldMismatch, "c is not a field element");
    chars::RootsOfUnity mu(field, d);
    const auto counts = tuple_counts(mu, n, c);
    const long sign = n % 2 == 0 ? -1 : 1;
    GroupRingElement out(GroupShape::roots_power(d, n));
    for (std::uint64_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) continue;
        auto keys = tuple_keys(i, d, n);
        out.add_term(GroupKey(keys.begin(), keys.end()), CyclotomicNumber::from_integer(1, sign * counts[i]));
    }
    return out;
}

namespace {

// Compares A * (|G| e^chi) with lambda * (|G| e^chi) coefficientwise in Z[zeta_N], where A is an
// integral element given by (group index, multiplicity) pairs, and exponent(i) gives chi(g_i) = zeta_N^e.
struct DenseEigenResult {
    bool equal;
    CyclotomicNumber lhs_identity;
    CyclotomicNumber rhs_identity;
};

template <class Combine, class Exponent>
DenseEigenResult dense_eigen_compare(int conductor, std::uint64_t order,
                                     const std::vector<std::pair<std::uint64_t, std::int64_t>>& support,
                                     const CyclotomicNumber& lambda, Combine&& difference, Exponent&& exponent,
                                     std::uint64_t identity) {
    cyclo::DenseRing ring(conductor);
    const auto phi = static_cast<std::size_t>(ring.degree());
    const auto lambda_vec = ring.from_number(lambda);
    std::vector<std::int64_t> hist(static_cast<std::size_t>(conductor));
    std::vector<std::int64_t> lhs(phi), rhs(phi);
    DenseEigenResult result{true, {}, {}};
    for (std::uint64_t y = 0; y < order; ++y) {
        std::fill(hist.begin(), hist.end(), 0);
        // coefficient at y of A * sum_g conj(chi(g)) g is sum_s A[s] conj(chi(y - s))
        for (const auto& [s, mult] : support) {
            hist[static_cast<std::size_t>(nt::mod(-exponent(difference(y, s)), conductor))] += mult;
        }
        ring.from_histogram(hist, lhs);
        ring.multiply_zeta(lambda_vec, -exponent(y), rhs);
        if (lhs != rhs) result.equal = false;
        if (y == identity) {
            result.lhs_identity = ring.to_number(lhs);
            result.rhs_identity = ring.to_number(rhs);
        }
    }
    return result;
}

}  // namespace

CheckReport eigen_check(const ff::FieldPtr& field, int d, Elem c, int a) {
    if (c == 0) fail(ErrorCode::TrivialAdditive, "eigen check needs a nontrivial additive character");
    if (!field->contains(c)) fail(ErrorCode::FieldMismatch, "c is not a field element");
    chars::RootsOfUnity mu(field, d);
    const auto& k = *field;
    const std::int64_t p = k.p();
    const int conductor = static_cast<int>(p * d);
    const std::uint64_t order = k.order() * static_cast<std::uint64_t>(d);
    const auto ai = nt::mod(a, d);

    auto psi = chars::additive_character(field, c);
    auto chi = chars::MultiplicativeCharacter{field, d, static_cast<int>(ai), mu.omega()};
    const auto g = gauss_sum(psi, chi);

    // group index x * d + j for (x, omega^j)
    std::vector<std::pair<std::uint64_t, std::int64_t>> support;
    for (Elem m = 1; m < k.order(); ++m) support.emplace_back(std::uint64_t{m} * d + mu.power_index(m), -1);
    auto difference = [&](std::uint64_t y, std::uint64_t s) {
        const Elem x = k.sub(static_cast<Elem>(y / d), static_cast<Elem>(s / d));
        const auto j = nt::mod(static_cast<std::int64_t>(y % d) - static_cast<std::int64_t>(s % d), d);
        return std::uint64_t{x} * d + static_cast<std::uint64_t>(j);
    };
    auto exponent = [&](std::uint64_t i) {
        const std::int64_t t = psi.exponent(static_cast<Elem>(i / d));
        return t * d + ai * static_cast<std::int64_t>(i % d) % d * p;
    };
    auto result = dense_eigen_compare(conductor, order, support, g, difference, exponent, 0);

    CheckReport report;
    report.identity = "eigen_gauss";
    report.params = {{"p", k.p()}, {"f", k.degree()}, {"d", d}, {"c", c}, {"a", ai}};
    report.lhs = result.lhs_identity.to_string();
    report.rhs = result.rhs_identity.to_string();
    report.outcome = result.equal ? Outcome::Pass : Outcome::Fail;
    report.note = "full group-ring elements compared; values are |G| times the identity coefficient";
    return report;
}

CheckReport eigen_check_jacobi(const ff::FieldPtr& field, int d, int n, Elem c, std::span<const int> avec,
                               std::uint64_t literal_budget) {
    if (n < 2) fail(ErrorCode::ArityTooSmall, "Jacobi element needs n >= 2");
    if (static_cast<int>(avec.size()) != n) fail(ErrorCode::InvalidArgument, "exponent vector has wrong length");
    if (c == 0 || !field->contains(c)) fail(ErrorCode::PreconditionFailed, "twist c must be a nonzero field element");
    chars::RootsOfUnity mu(field, d);
    const auto& k = *field;
    std::vector<int> a(avec.size());
    std::int64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<int>(nt::mod(avec[i], d));
        total += a[i];
    }

    const auto counts = tuple_counts(mu, n, c);
    const auto j = jacobi_sum(mu, a);
    const auto lambda = CyclotomicNumber::zeta_power(d, total * mu.power_index(c)) * j;

    std::vector<std::pair<std::uint64_t, std::int64_t>> support;
    const std::int64_t sign = n % 2 == 0 ? -1 : 1;
    for (std::uint64_t i = 0; i < counts.size(); ++i) {
        if (counts[i] != 0) support.emplace_back(i, sign * counts[i]);
    }
    const std::uint64_t order = counts.size();
    auto exponent = [&](std::uint64_t i) {
        std::int64_t e = 0;
        for (int t = n - 1; t >= 0; --t) {
            e += static_cast<std::int64_t>(a[t]) * static_cast<std::int64_t>(i % d);
            i /= d;
        }
        return e % d;
    };

    CheckReport report;
    report.identity = "eigen_jacobi";
    report.params = {{"p", k.p()}, {"f", k.degree()}, {"d", d}, {"n", n}, {"c", c}, {"a", a}};
    const auto phi = static_cast<std::uint64_t>(nt::euler_phi(static_cast<std::uint64_t>(d)));
    if (support.size() * order * phi <= literal_budget) {
        auto difference = [&](std::uint64_t y, std::uint64_t s) {
            std::uint64_t out = 0, scale = 1;
            for (int t = 0; t < n; ++t) {
                const auto digit = nt::mod(static_cast<std::int64_t>(y % d) - static_cast<std::int64_t>(s % d), d);
                out += static_cast<std::uint64_t>(digit) * scale;
                scale *= d;
                y /= d;
                s /= d;
            }
            return out;
        };
        auto result = dense_eigen_compare(d, order, support, lambda, difference, exponent, 0);
        report.lhs = result.lhs_identity.to_string();
        report.rhs = result.rhs_identity.to_string();
        report.outcome = result.equal ? Outcome::Pass : Outcome::Fail;
        report.note = "full group-ring elements compared; values are |G| times the identity coefficient";
    } else {
        // g e^chi = chi(g) e^chi, so A e^chi = (sum_g A[g] chi(g)) e^chi.
        std::vector<std::int64_t> hist(static_cast<std::size_t>(d), 0);
        for (const auto& [s, mult] : support) hist[static_cast<std::size_t>(exponent(s))] += mult;
        const auto scalar = CyclotomicNumber::from_histogram(d, hist);
        report.lhs = scalar.to_string();
        report.rhs = lambda.to_string();
        report.outcome = scalar == lambda ? Outcome::Pass : Outcome::Fail;
        report.note = "compared through the translation action on e^chi";
    }
    return report;
}

}  // namespace gjsum::sums
