#include "weil/weil.hpp"

#include <algorithm>
#include <numeric>

#include "chars/characters.hpp"
#include "lattice/lattice.hpp"
#include "stickelberger/stickelberger.hpp"
#include "sums/jacobi_table.hpp"
#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::weil {

using Json = nlohmann::ordered_json;

namespace {

std::string vector_text(std::span<const Integer> v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
    return out + "]";
}

Integer pow_integer(std::uint64_t base, std::uint64_t e) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, e);
    return out;
}

template <class Visit>
void for_each_tuple(int d, int n, Visit&& visit) {
    std::vector<int> keys(static_cast<std::size_t>(n), 0);
    std::size_t index = 0;
    while (true) {
        visit(index++, std::span<const int>(keys));
        int j = n - 1;
        for (; j >= 0; --j) {
            if (++keys[j] < d) break;
            keys[j] = 0;
        }
        if (j < 0) return;
    }
}

struct Generators {
    std::vector<std::vector<int>> tuples;
    std::vector<CyclotomicNumber> values;
};

Generators jacobi_generators(const cyclo::PrimeSplitting& split, int arity_cap) {
    Generators out;
    const int d = split.d();
    chars::RootsOfUnity mu(split.residue_field(), d, split.omega());
    sums::JacobiTable table(mu);
    const auto phi = static_cast<std::size_t>(cyclo::context(d).degree());
    for (int n = 2; n <= arity_cap; ++n) {
        const auto& values = table.values(n);
        for_each_tuple(d, n, [&](std::size_t i, std::span<const int> keys) {
            if (!chars::admissible(keys, d)) return;
            out.tuples.emplace_back(keys.begin(), keys.end());
            std::vector<Integer> nums;
            for (std::size_t k = 0; k < phi; ++k) nums.emplace_back(static_cast<long>(values[i * phi + k]));
            out.values.push_back(CyclotomicNumber::from_numerators(d, std::move(nums)));
        });
    }
    return out;
}

}  // namespace

std::vector<Integer> phi(const CyclotomicNumber& alpha, const cyclo::PrimeSplitting& split) {
    if (alpha.is_zero()) fail(ErrorCode::ZeroArgument, "valuation of zero");
    const auto a = cyclo::cast_conductor(alpha, split.d());
    const auto values = split.valuations(a);
    std::vector<Integer> out(values.begin(), values.end());
    // |N(alpha)| = p^(f * total valuation) exactly when no other prime divides alpha
    Integer total = 0;
    for (const auto& v : out) total += v;
    // norm from Q(zeta_d), whatever conductor a is stored at
    const auto extra = static_cast<unsigned long>(cyclo::context(split.d()).degree() / a.degree());
    const cyclo::Rational norm = a.norm();
    Integer num = abs(norm.get_num()), den = norm.get_den();
    mpz_pow_ui(num.get_mpz_t(), num.get_mpz_t(), extra);
    mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), extra);
    const Integer p = static_cast<unsigned long>(split.p());
    const long num_power = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()));
    const long den_power = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()));
    if (num != 1 || den != 1) fail(ErrorCode::NotPUnit, alpha.to_string() + " is divisible by a prime away from p");
    if (Integer(num_power - den_power) != total * split.f()) {
        fail(ErrorCode::Internal, "valuations of " + alpha.to_string() + " do not account for its norm");
    }
    return out;
}

CheckReport weight_consistency(const CyclotomicNumber& alpha, const cyclo::PrimeSplitting& split, int w) {
    const auto v = phi(alpha, split);
    std::vector<Integer> lhs(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int h = split.coset_reps()[i];
        lhs[i] = v[i] + v[split.coset_index(split.d() - h)];
    }
    const std::vector<Integer> rhs(v.size(), Integer(w) * split.f());
    CheckReport report;
    report.identity = "weight_consistency";
    report.params = {{"d", split.d()}, {"p", split.p()}, {"f", split.f()}, {"w", w}, {"alpha", alpha.to_string()}};
    report.lhs = vector_text(lhs);
    report.rhs = vector_text(rhs);
    report.outcome = lhs == rhs ? Outcome::Pass : Outcome::Fail;
    return report;
}

RankReport rank_report(int d, std::uint64_t p, const ff::FieldOptions& options) {
    if (d < 3) fail(ErrorCode::BadParameters, "d must be at least 3");
    if (!nt::is_prime(p) || d % p == 0) fail(ErrorCode::BadParameters, "p must be a prime not dividing d");
    RankReport report;
    report.d = d;
    report.p = p;
    report.f = static_cast<int>(nt::multiplicative_order(p % d, d));
    const auto phi_d = nt::euler_phi(static_cast<std::uint64_t>(d));
    report.rank_formula = report.f % 2 == 1 ? 1 + phi_d / (2 * static_cast<std::uint64_t>(report.f)) : 1;
    for (std::uint64_t k = 0, power = 1; k < static_cast<std::uint64_t>(report.f); ++k, power = power * p % d) {
        if (power == static_cast<std::uint64_t>(d - 1)) report.minus_one_in_decomposition = true;
    }
    report.rank_by_decomposition =
        report.minus_one_in_decomposition ? 1 : 1 + phi_d / (2 * static_cast<std::uint64_t>(report.f));
    cyclo::SplittingPtr split;
    try {
        split = cyclo::make_splitting(d, p, options, 1);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::FieldTooLarge) throw;
        report.note = std::string("residue field beyond the enumeration bound: ") + e.what();
        return report;
    }
    const auto gens = jacobi_generators(*split, 2);
    lattice::Matrix m(0, split->coset_reps().size());
    bool flat = true;
    const std::vector<Integer> half_trace(m.cols(), Integer(report.f / 2));
    for (const auto& value : gens.values) {
        const auto v = phi(value, *split);
        if (report.f % 2 == 0 && v != half_trace) flat = false;
        m.append_row(v);
    }
    m.append_row(phi(CyclotomicNumber::from_integer(d, pow_integer(p, static_cast<std::uint64_t>(report.f))), *split));
    report.generators = m.rows();
    report.rank_computed = lattice::rank(m);
    if (report.f % 2 == 0) report.f_even_check = flat;
    return report;
}

Json RankReport::to_json() const {
    Json out;
    out["d"] = d;
    out["p"] = p;
    out["f"] = f;
    out["parity"] = f % 2 == 0 ? "even" : "odd";
    out["generators"] = generators;
    out["rank_formula"] = rank_formula;
    out["rank_computed"] = rank_computed ? Json(*rank_computed) : Json(nullptr);
    out["f_even_check"] = f_even_check ? Json(*f_even_check) : Json(nullptr);
    out["minus_one_in_decomposition_group"] = minus_one_in_decomposition;
    out["rank_by_decomposition_group"] = rank_by_decomposition;
    out["pass"] = pass();
    if (!note.empty()) out["note"] = note;
    return out;
}

CheckReport RankReport::to_check() const {
    CheckReport report;
    report.identity = "weil_rank";
    report.params = {{"d", d}, {"p", p}, {"f", f}, {"minus_one_in_decomposition_group", minus_one_in_decomposition},
                     {"rank_by_decomposition_group", rank_by_decomposition}};
    report.lhs = rank_computed ? std::to_string(*rank_computed) : "";
    report.rhs = std::to_string(rank_formula);
    if (!rank_computed) {
        report.outcome = Outcome::BudgetExceeded;
        report.instances = 0;
        report.note = note;
        return report;
    }
    report.outcome = pass() ? Outcome::Pass : Outcome::Fail;
    if (f_even_check) report.note = *f_even_check ? "every Phi(j) = (f/2)T" : "some Phi(j) differs from (f/2)T";
    return report;
}

namespace {

// Symbol space: theta~(1..d-1), then T. Rows are scaled by 2 to stay integral.
std::vector<Integer> symbol_row(int d) { return std::vector<Integer>(static_cast<std::size_t>(d)); }

void add_theta_tilde(std::vector<Integer>& row, int d, std::int64_t a, long weight) {
    const auto r = nt::mod(a, d);
    if (r == 0) {
        row[d - 1] -= weight;  // 2 theta~(0) = -T
    } else {
        row[r - 1] += 2 * weight;
    }
}

// Relations among the symbols: oddness and every distribution relation.
lattice::Matrix symbol_relations(int d) {
    lattice::Matrix out(0, static_cast<std::size_t>(d));
    for (int a = 1; a < d; ++a) {
        auto row = symbol_row(d);
        add_theta_tilde(row, d, a, 1);
        add_theta_tilde(row, d, d - a, 1);
        out.append_row(row);
    }
    for (int n = 2; n <= d; ++n) {
        if (d % n != 0) continue;
        for (int a = 0; a < d; ++a) {
            auto row = symbol_row(d);
            add_theta_tilde(row, d, static_cast<std::int64_t>(n) * a, 1);
            for (int i = 0; i < n; ++i) add_theta_tilde(row, d, a + static_cast<std::int64_t>(d / n) * i, -1);
            out.append_row(row);
        }
    }
    return out;
}

CyclotomicNumber evaluate(const std::vector<Integer>& exponents, const std::vector<CyclotomicNumber>& values,
                          const std::vector<std::vector<int>>& tuples, int d, std::uint64_t q) {
    auto product = CyclotomicNumber::from_integer(d, 1);
    Integer q_power = 0;  // net exponent of q
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& e = exponents[i];
        if (e == 0) continue;
        if (!e.fits_slong_p()) fail(ErrorCode::BudgetExceeded, "kernel exponent too large to evaluate");
        const long k = e.get_si();
        // j^-1 = conj(j) / q^(n-1)
        product *= (k > 0 ? values[i] : values[i].conj()).pow(std::labs(k));
        if (k < 0) q_power -= Integer(-k) * static_cast<long>(tuples[i].size() - 1);
    }
    q_power += exponents.back();
    if (!q_power.fits_slong_p()) fail(ErrorCode::BudgetExceeded, "kernel exponent too large to evaluate");
    const long k = q_power.get_si();
    const Integer scale = pow_integer(q, static_cast<std::uint64_t>(std::labs(k)));
    return k >= 0 ? product.scaled(cyclo::Rational(scale)) : product.scaled(cyclo::Rational(1) / scale);
}

}  // namespace

RelationReport relation_lattice(int d, std::uint64_t p, int arity_cap, const ff::FieldOptions& options) {
    if (d < 3) fail(ErrorCode::BadParameters, "d must be at least 3");
    if (!nt::is_prime(p) || d % p == 0) fail(ErrorCode::BadParameters, "p must be a prime not dividing d");
    if (arity_cap < 2) fail(ErrorCode::ArityTooSmall, "arity cap must be at least 2");
    RelationReport report;
    report.d = d;
    report.p = p;
    report.arity_cap = arity_cap;
    report.f = static_cast<int>(nt::multiplicative_order(p % d, d));
    report.minus_basis = stickelberger::check_minus_basis(d).pass();
    cyclo::SplittingPtr split;
    try {
        split = cyclo::make_splitting(d, p, options, arity_cap - 1);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::FieldTooLarge) throw;
        report.budget_exceeded = true;
        report.note = std::string("residue field beyond the enumeration bound: ") + e.what();
        return report;
    }
    const auto gens = jacobi_generators(*split, arity_cap);
    report.generators = gens.tuples;
    const std::size_t count = gens.values.size() + 1;
    const std::uint64_t q = split->q();

    lattice::Matrix m(0, split->coset_reps().size());
    for (const auto& value : gens.values) m.append_row(phi(value, *split));
    m.append_row(phi(CyclotomicNumber::from_integer(d, Integer(static_cast<unsigned long>(q))), *split));
    report.rank_computed = lattice::rank(m);

    const auto kernel = lattice::left_kernel(m);
    for (std::size_t i = 0; i < kernel.rows(); ++i) {
        KernelElement element;
        element.exponents.assign(kernel.row(i).begin(), kernel.row(i).end());
        element.order = cyclo::is_root_of_unity(evaluate(element.exponents, gens.values, gens.tuples, d, q));
        report.kernel.push_back(std::move(element));
    }

    // Generator images in the symbol space: 2 theta(a) = 2 sum theta~(a_i) - 2 theta~(sum) + (n - 1) T.
    lattice::Matrix images(0, static_cast<std::size_t>(d));
    for (const auto& t : gens.tuples) {
        auto row = symbol_row(d);
        std::int64_t total = 0;
        for (int a : t) {
            add_theta_tilde(row, d, a, 1);
            total += a;
        }
        add_theta_tilde(row, d, total, -1);
        row[d - 1] += static_cast<long>(t.size() - 1);
        images.append_row(row);
    }
    {
        auto row = symbol_row(d);
        row[d - 1] = 2;
        images.append_row(row);
    }
    // y with y * images in the span of the symbol relations
    const auto rels = symbol_relations(d);
    lattice::Matrix stacked = images;
    for (std::size_t i = 0; i < rels.rows(); ++i) stacked.append_row(rels.row(i));
    const auto lifted = lattice::left_kernel(stacked);
    lattice::Matrix relations(0, count);
    for (std::size_t i = 0; i < lifted.rows(); ++i) relations.append_row(lifted.row(i).subspan(0, count));
    // Frobenius: j(p a) = j(a)
    for (std::size_t i = 0; i < gens.tuples.size(); ++i) {
        std::vector<int> moved;
        for (int a : gens.tuples[i]) moved.push_back(static_cast<int>((static_cast<std::uint64_t>(a) * p) % d));
        const auto it = std::find(gens.tuples.begin(), gens.tuples.end(), moved);
        if (it == gens.tuples.end()) fail(ErrorCode::Internal, "Frobenius image is not a generator");
        const auto j = static_cast<std::size_t>(it - gens.tuples.begin());
        if (j == i) continue;
        std::vector<Integer> row(count);
        row[i] = 1;
        row[j] = -1;
        relations.append_row(row);
    }
    report.relation_rank = lattice::rank(relations);
    const auto applied = relations * m;
    report.relations_in_kernel = true;
    for (std::size_t i = 0; i < applied.rows(); ++i) {
        for (std::size_t k = 0; k < applied.cols(); ++k) {
            if (applied(i, k) != 0) report.relations_in_kernel = false;
        }
    }
    return report;
}

bool RelationReport::torsion_ok() const {
    if (budget_exceeded) return false;
    return std::all_of(kernel.begin(), kernel.end(),
                       [&](const KernelElement& e) { return e.order && (2 * d) % *e.order == 0; });
}

Json RelationReport::to_json() const {
    Json out;
    out["d"] = d;
    out["p"] = p;
    out["f"] = f;
    out["arity_cap"] = arity_cap;
    out["generators"] = generators.size() + (budget_exceeded ? 0 : 1);
    out["rank_computed"] = rank_computed;
    out["kernel_rank"] = kernel.size();
    out["rational_relation_dimension"] = budget_exceeded ? 0 : generators.size() + 1 - rank_computed;
    Json orders = Json::array();
    for (const auto& e : kernel) orders.push_back(e.order ? Json(*e.order) : Json(nullptr));
    out["kernel_orders"] = orders;
    out["torsion_ok"] = torsion_ok();
    out["relation_rank"] = relation_rank;
    out["relations_in_kernel"] = relations_in_kernel;
    out["span_ok"] = span_ok();
    out["minus_basis_certificate"] = minus_basis;
    if (!note.empty()) out["note"] = note;
    return out;
}

CheckReport RelationReport::torsion_check() const {
    CheckReport report;
    report.identity = "kernel_torsion";
    report.params = {{"d", d}, {"p", p}, {"f", f}};
    if (budget_exceeded) {
        report.outcome = Outcome::BudgetExceeded;
        report.instances = 0;
        report.note = note;
        return report;
    }
    report.instances = kernel.size();
    std::int64_t worst = 1;
    for (const auto& e : kernel) {
        if (!e.order) {
            worst = 0;
            break;
        }
        worst = std::lcm(worst, static_cast<std::int64_t>(*e.order));
    }
    report.lhs = worst == 0 ? "not a root of unity" : "lcm of orders " + std::to_string(worst);
    report.rhs = "divides " + std::to_string(2 * d);
    report.outcome = torsion_ok() ? Outcome::Pass : Outcome::Fail;
    return report;
}

CheckReport RelationReport::span_check() const {
    CheckReport report;
    report.identity = "kernel_span";
    report.params = {{"d", d}, {"p", p}, {"f", f}, {"arity_cap", arity_cap}};
    if (budget_exceeded) {
        report.outcome = Outcome::BudgetExceeded;
        report.instances = 0;
        report.note = note;
        return report;
    }
    report.instances = kernel.size();
    report.lhs = "kernel rank " + std::to_string(kernel.size());
    report.rhs = "relation rank " + std::to_string(relation_rank) +
                 (relations_in_kernel ? "" : ", relations outside the kernel");
    report.outcome = span_ok() ? Outcome::Pass : Outcome::Fail;
    return report;
}

}  // namespace gjsum::weil
