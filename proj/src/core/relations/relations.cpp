#include "relations/relations.hpp"

#include "chars/characters.hpp"
#include "sums/jacobi_table.hpp"
#include "sums/sums.hpp"
#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::relations {

using chars::AdditiveCharacter;
using chars::MultiplicativeCharacter;
using cyclo::CyclotomicNumber;

namespace {

nlohmann::ordered_json base_params(const FieldPtr& field, int d) {
    return {{"p", field->p()}, {"f", field->degree()}, {"d", d}};
}

std::vector<int> reduced(std::span<const int> avec, int d) {
    std::vector<int> out;
    for (int a : avec) out.push_back(static_cast<int>(nt::mod(a, d)));
    return out;
}

int exponent_sum(std::span<const int> avec, int d) {
    std::int64_t total = 0;
    for (int a : avec) total += a;
    return static_cast<int>(nt::mod(total, d));
}

void require_admissible(std::span<const int> avec, int d) {
    if (!chars::admissible(avec, d)) fail(ErrorCode::NotAdmissible, "exponent tuple is not admissible");
}

AdditiveCharacter psi_of(const FieldPtr& field, Elem c) {
    auto psi = chars::additive_character(field, c);
    if (psi.trivial()) fail(ErrorCode::TrivialAdditive, "additive character must be nontrivial");
    return psi;
}

CyclotomicNumber gauss(const FieldPtr& field, int d, Elem c, std::int64_t a) {
    return sums::gauss_sum(psi_of(field, c), chars::multiplicative_character(field, d, a));
}

CyclotomicNumber integer(long v) { return CyclotomicNumber::from_integer(1, v); }

}  // namespace

CyclotomicNumber jacobi_any(const FieldPtr& field, int d, std::span<const int> avec) {
    const int n = static_cast<int>(avec.size());
    if (n < 1) fail(ErrorCode::ArityTooSmall, "Jacobi sum needs at least one character");
    chars::RootsOfUnity mu(field, d);
    if (n >= 2) return sums::jacobi_sum(mu, avec);
    return sums::jacobi_from_counts(d, 1, sums::tuple_counts(mu, 1, 1), avec);
}

CheckReport check_gauss_reflection(const FieldPtr& field, int d, Elem c, int a) {
    if (nt::mod(a, d) == 0) fail(ErrorCode::TrivialCharacter, "reflection needs a nontrivial character");
    const auto lhs = gauss(field, d, c, a) * gauss(field, d, field->neg(c), -a);
    auto params = base_params(field, d);
    params["c"] = c;
    params["a"] = nt::mod(a, d);
    return compare_values("gauss_reflection", params, lhs,
                          CyclotomicNumber::from_integer(1, static_cast<unsigned long>(field->order())));
}

CheckReport check_gauss_conjugate(const FieldPtr& field, int d, Elem c, int a) {
    const auto lhs = gauss(field, d, field->neg(c), a);
    const auto chi = chars::multiplicative_character(field, d, a);
    const auto rhs = chars::eval_mult_power(chi, field->neg(1)) * gauss(field, d, c, a);
    auto params = base_params(field, d);
    params["c"] = c;
    params["a"] = chi.a;
    return compare_values("gauss_conjugate", params, lhs, rhs);
}

CheckReport check_gauss_jacobi_quotient(const FieldPtr& field, int d, Elem c, std::span<const int> avec) {
    if (avec.size() < 2) fail(ErrorCode::ArityTooSmall, "quotient formula needs n >= 2");
    require_admissible(avec, d);
    const auto lhs = sums::jacobi_sum(chars::RootsOfUnity(field, d), avec);
    auto numerator = integer(1);
    for (int a : avec) numerator *= gauss(field, d, c, a);
    const auto quotient = numerator / gauss(field, d, c, exponent_sum(avec, d));
    auto params = base_params(field, d);
    params["c"] = c;
    params["a"] = reduced(avec, d);
    CheckReport report;
    try {
        report = compare_values("gauss_jacobi_quotient", params, lhs, cyclo::cast_conductor(quotient, d));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotInSubfield) throw;
        report = compare_values("gauss_jacobi_quotient", params, lhs, quotient);
        report.outcome = Outcome::Fail;
        report.note = "quotient does not lie in Q(zeta_d)";
    }
    return report;
}

CheckReport check_jacobi_reflection(const FieldPtr& field, int d, std::span<const int> avec) {
    if (avec.size() < 2) fail(ErrorCode::ArityTooSmall, "Jacobi sum needs n >= 2");
    require_admissible(avec, d);
    chars::RootsOfUnity mu(field, d);
    std::vector<int> conj;
    for (int a : avec) conj.push_back(-a);
    const auto lhs = sums::jacobi_sum(mu, avec) * sums::jacobi_sum(mu, conj);
    const cyclo::Integer q = static_cast<unsigned long>(field->order());
    cyclo::Integer power;
    mpz_pow_ui(power.get_mpz_t(), q.get_mpz_t(), avec.size() - 1);
    auto params = base_params(field, d);
    params["a"] = reduced(avec, d);
    return compare_values("jacobi_reflection", params, lhs, CyclotomicNumber::from_integer(1, power));
}

CheckReport check_jacobi_induction(const FieldPtr& field, int d, std::span<const int> avec) {
    const int n = static_cast<int>(avec.size());
    if (n < 3) fail(ErrorCode::ArityTooSmall, "induction needs n >= 3");
    require_admissible(avec, d);
    const auto a = reduced(avec, d);
    const auto lhs = jacobi_any(field, d, a);
    std::vector<int> head(a.begin(), a.end() - 2);
    const int tail = static_cast<int>(nt::mod(a[n - 2] + a[n - 1], d));
    CyclotomicNumber rhs;
    auto params = base_params(field, d);
    params["a"] = a;
    if (tail != 0) {
        head.push_back(tail);
        const std::vector<int> pair = {a[n - 2], a[n - 1]};
        rhs = jacobi_any(field, d, head) * jacobi_any(field, d, pair);
        params["branch"] = 1;
    } else {
        const auto chi = chars::multiplicative_character(field, d, a[n - 2]);
        rhs = jacobi_any(field, d, head) * chars::eval_mult_power(chi, field->neg(1)) *
              CyclotomicNumber::from_integer(1, static_cast<unsigned long>(field->order()));
        params["branch"] = 2;
    }
    return compare_values("jacobi_induction", params, lhs, rhs);
}

CheckReport check_base_change(const FieldPtr& field, int d, Elem c, std::span<const int> avec, int r,
                              const ff::FieldOptions& options) {
    if (avec.empty()) fail(ErrorCode::ArityTooSmall, "base change needs at least one exponent");
    if (r < 1) fail(ErrorCode::InvalidArgument, "extension degree must be at least 1");
    const auto a = reduced(avec, d);
    auto params = base_params(field, d);
    params["r"] = r;
    if (a.size() == 1) {
        const auto psi = psi_of(field, c);
        const auto chi = chars::multiplicative_character(field, d, a[0]);
        const auto lifted = chars::lift_characters(psi, chi, r, options);
        params["c"] = c;
        params["a"] = a;
        return compare_values("base_change_gauss", params, sums::gauss_sum(lifted.psi, lifted.chi),
                              sums::gauss_sum(psi, chi).pow(r));
    }
    bool all_trivial = true;
    for (int v : a) all_trivial = all_trivial && v == 0;
    if (all_trivial) fail(ErrorCode::TrivialCharacter, "base change needs a nontrivial character tuple");
    const auto chi = chars::multiplicative_character(field, d, 1);
    const auto lifted = chars::lift_characters(chars::additive_character(field, 1), chi, r, options);
    chars::RootsOfUnity mu_big(lifted.chi.field, d, lifted.chi.omega);
    sums::JacobiTable table(mu_big);
    params["a"] = a;
    return compare_values("base_change_jacobi", params, table.value(a),
                          sums::jacobi_sum(chars::RootsOfUnity(field, d), a).pow(r));
}

CheckReport check_multiplication(const FieldPtr& field, int d, int n, int a, MultiplicationForm form, Elem c) {
    if (n < 1 || d % n != 0) fail(ErrorCode::BadDivisor, "multiplication formula needs n | d");
    const Elem n_elem = field->from_integer(n);
    if (n_elem == 0) fail(ErrorCode::PreconditionFailed, "n vanishes in the field");
    const int an = static_cast<int>(nt::mod(static_cast<std::int64_t>(a) * n, d));
    const auto alpha_n = chars::multiplicative_character(field, d, an);
    const auto factor = chars::eval_mult_power(alpha_n, n_elem);
    auto params = base_params(field, d);
    params["n"] = n;
    params["a"] = nt::mod(a, d);
    if (form == MultiplicationForm::Gauss) {
        params["c"] = c;
        auto rhs = factor;
        for (int j = 0; j < n; ++j) {
            const int b = j * (d / n);
            rhs *= gauss(field, d, c, a + b) / gauss(field, d, c, b);
        }
        return compare_values("multiplication_gauss", params, gauss(field, d, c, an), rhs);
    }
    if (an == 0) {
        CheckReport report;
        report.identity = "multiplication_jacobi";
        report.params = params;
        report.outcome = Outcome::SkippedTrivial;
        report.note = "a^n = 1";
        return report;
    }
    chars::RootsOfUnity mu(field, d);
    const int a0 = static_cast<int>(nt::mod(a, d));
    const auto diagonal =
        n == 1 ? jacobi_any(field, d, std::vector<int>{a0}) : sums::JacobiTable(mu).diagonal_jacobi(a0, n);
    const auto lhs = factor * diagonal;
    auto rhs = integer(1);
    for (int j = 1; j < n; ++j) {
        const std::vector<int> pair = {a, j * (d / n)};
        rhs *= sums::jacobi_sum(mu, pair);
    }
    return compare_values("multiplication_jacobi", params, lhs, rhs);
}

}  // namespace gjsum::relations
