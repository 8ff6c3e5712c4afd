#include "counts/counts.hpp"

#include <functional>
#include <thread>
#include <vector>

#include "chars/characters.hpp"
#include "cyclo/cyclotomic.hpp"
#include "sums/jacobi_table.hpp"
#include "sums/sums.hpp"
#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::counts {

namespace {

using cyclo::CyclotomicNumber;
using cyclo::Integer;
using Json = nlohmann::ordered_json;

std::uint64_t base_order(std::uint64_t p, int f) {
    auto q = nt::checked_pow(p, static_cast<unsigned>(f), std::uint64_t{1} << 62);
    if (!q) fail(ErrorCode::FieldTooLarge, "base field order overflows");
    return *q;
}

void validate(const VarietySpec& spec, int r) {
    if (!nt::is_prime(spec.p)) fail(ErrorCode::NotPrime, "p must be prime");
    if (spec.f < 1) fail(ErrorCode::DegreeOutOfRange, "f must be positive");
    if (r < 1) fail(ErrorCode::InvalidArgument, "r must be positive");
    if (spec.d < 1 || (base_order(spec.p, spec.f) - 1) % static_cast<std::uint64_t>(spec.d) != 0) {
        fail(ErrorCode::BadDivisor, "d must divide q - 1");
    }
    if (spec.kind == VarietyKind::Fermat) {
        if (spec.n < 2) fail(ErrorCode::ArityTooSmall, "Fermat hypersurfaces need n >= 2");
        if (spec.c == 0) fail(ErrorCode::ZeroArgument, "c must be nonzero");
        if (spec.c >= base_order(spec.p, spec.f)) fail(ErrorCode::FieldMismatch, "c is not a base field element");
    }
}

// Runs task(i) for i < count on up to `jobs` threads; results are summed in index order.
std::uint64_t run_tasks(std::size_t count, unsigned jobs, const std::function<std::uint64_t(std::size_t)>& task) {
    std::vector<std::uint64_t> results(count, 0);
    const unsigned width = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (width <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = task(i);
    } else {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < width; ++w) {
            workers.emplace_back([&, w] {
                for (std::size_t i = w; i < count; i += width) results[i] = task(i);
            });
        }
    }
    std::uint64_t total = 0;
    for (auto v : results) total += v;
    return total;
}

std::uint64_t count_artin_schreier(const ff::FieldPtr& K, std::uint64_t q, int d, unsigned jobs) {
    const auto Q = K->order();
    std::vector<Elem> lhs(Q);
    for (Elem x = 0; x < Q; ++x) lhs[x] = K->sub(K->pow(x, static_cast<std::int64_t>(q)), x);
    const auto affine = run_tasks(Q, jobs, [&](std::size_t y) {
        const Elem rhs = K->pow(static_cast<Elem>(y), d);
        std::uint64_t hits = 0;
        for (Elem x = 0; x < Q; ++x) hits += lhs[x] == rhs;
        return hits;
    });
    return affine + 1;
}

std::uint64_t count_fermat(const ff::FieldPtr& K, int d, int n, Elem c, unsigned jobs) {
    const auto Q = K->order();
    std::vector<Elem> lead(Q), rest(Q);
    for (Elem x = 0; x < Q; ++x) {
        rest[x] = K->pow(x, d);
        lead[x] = K->neg(K->mul(c, rest[x]));
    }
    auto term = [&](int position, Elem x) { return position == 0 ? lead[x] : rest[x]; };

    // zeros after the first free coordinate pos .. n
    std::function<std::uint64_t(int, Elem)> zeros = [&](int pos, Elem sum) -> std::uint64_t {
        if (pos > n) return sum == 0;
        std::uint64_t total = 0;
        if (pos == n) {
            for (Elem x = 0; x < Q; ++x) total += K->add(sum, rest[x]) == 0;
            return total;
        }
        for (Elem x = 0; x < Q; ++x) total += zeros(pos + 1, K->add(sum, term(pos, x)));
        return total;
    };

    // one task per (leading position k, value of coordinate k + 1)
    struct Task {
        int k;
        Elem next;
    };
    std::vector<Task> tasks;
    for (int k = 0; k <= n; ++k) {
        if (k == n) {
            tasks.push_back({k, 0});
        } else {
            for (Elem x = 0; x < Q; ++x) tasks.push_back({k, x});
        }
    }
    return run_tasks(tasks.size(), jobs, [&](std::size_t i) {
        const auto [k, next] = tasks[i];
        const Elem sum = term(k, 1);
        if (k == n) return std::uint64_t{sum == 0};
        return zeros(k + 2, K->add(sum, term(k + 1, next)));
    });
}

std::uint64_t cells(const VarietySpec& spec, std::uint64_t Q) {
    const std::uint64_t cap = std::uint64_t{1} << 62;
    if (spec.kind == VarietyKind::ArtinSchreier) {
        auto c = nt::checked_pow(Q, 2, cap);
        return c ? *c : cap;
    }
    std::uint64_t total = 0;
    for (int i = 0; i <= spec.n; ++i) {
        auto c = nt::checked_pow(Q, static_cast<unsigned>(i), cap);
        if (!c || total > cap - *c) return cap;
        total += *c;
    }
    return total;
}

bool is_integer(const CyclotomicNumber& x) { return x.is_rational() && x.rational_value().get_den() == 1; }

Integer integer_value(const CyclotomicNumber& x) { return x.rational_value().get_num(); }

struct EigenSums {
    CyclotomicNumber power_sum;  // sum of r-th powers of the base-field eigenvalues
    CyclotomicNumber direct;     // the same sum recomputed over F_{q^r}
    std::size_t count = 0;
};

struct Extension {
    ff::FieldPtr K;
    std::function<Elem(Elem)> embed;
};

Extension extension(const ff::FieldPtr& k, int r, const ff::FieldOptions& options) {
    if (r == 1) return {k, [](Elem x) { return x; }};
    auto K = ff::make_field(k->p(), k->degree() * r, options);
    auto emb = std::make_shared<ff::FieldEmbedding>(ff::subfield_embedding(k, K));
    return {K, [emb](Elem x) { return (*emb)(x); }};
}

EigenSums artin_schreier_sums(const ff::FieldPtr& k, const Extension& ext, int d, int r) {
    EigenSums out;
    const chars::RootsOfUnity mu(k, d);
    const Elem omega_K = ext.embed(mu.omega());
    for (Elem c = 1; c < k->order(); ++c) {
        for (int a = 1; a < d; ++a) {
            const auto g = sums::gauss_sum(chars::additive_character(k, c), chars::MultiplicativeCharacter{k, d, a, mu.omega()});
            out.power_sum += g.pow(r);
            // psi_c o Tr and chi_a o N on F_{q^r}
            const auto gK = sums::gauss_sum(chars::additive_character(ext.K, ext.embed(c)),
                                            chars::MultiplicativeCharacter{ext.K, d, a, omega_K});
            out.direct += gK;
            ++out.count;
        }
    }
    return out;
}

std::vector<std::vector<int>> admissible_tuples(int d, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> avec(static_cast<std::size_t>(n), 1);
    while (true) {
        if (chars::admissible(avec, d)) out.push_back(avec);
        int i = n - 1;
        while (i >= 0 && avec[static_cast<std::size_t>(i)] == d - 1) avec[static_cast<std::size_t>(i--)] = 1;
        if (i < 0) break;
        ++avec[static_cast<std::size_t>(i)];
    }
    return out;
}

EigenSums fermat_sums(const ff::FieldPtr& k, const Extension& ext, int d, int n, Elem c, int r) {
    EigenSums out;
    if (d == 1) return out;
    const chars::RootsOfUnity mu(k, d);
    const chars::RootsOfUnity mu_K(ext.K, d, ext.embed(mu.omega()));
    sums::JacobiTable table(mu);
    std::optional<sums::JacobiTable> table_K;
    if (ext.K != k) table_K.emplace(mu_K);
    const std::int64_t key = mu.power_index(c);
    const std::int64_t key_K = mu_K.power_index(ext.embed(c));
    for (const auto& avec : admissible_tuples(d, n)) {
        std::int64_t total = 0;
        for (int a : avec) total += a;
        const auto j = table.value(avec);
        const auto eigen = CyclotomicNumber::zeta_power(d, total * key) * j;
        out.power_sum += eigen.pow(r);
        const auto jK = table_K ? table_K->value(avec) : j;
        out.direct += CyclotomicNumber::zeta_power(d, total * key_K) * jK;
        ++out.count;
    }
    return out;
}

int calibrated_sign(const Integer& residual, const CyclotomicNumber& sum, const char* what) {
    if (!is_integer(sum)) fail(ErrorCode::Internal, std::string(what) + " calibration sum is not an integer");
    const Integer s = integer_value(sum);
    if (residual == s) return 1;
    if (residual == -s) return -1;
    fail(ErrorCode::Internal, std::string(what) + " calibration residual is not +-1 times the eigenvalue sum");
}

Integer power_of(std::uint64_t q, int e) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), q, static_cast<unsigned long>(e));
    return out;
}

Integer from_u64(std::uint64_t v) {
    Integer out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return out;
}

CheckReport budget_report(std::string identity, Json params, const std::string& reason) {
    CheckReport report;
    report.identity = std::move(identity);
    report.params = std::move(params);
    report.outcome = Outcome::BudgetExceeded;
    report.instances = 0;
    report.note = reason;
    return report;
}

CheckReport finish(std::string identity, Json params, std::uint64_t count, const Integer& main_term, int sign,
                   const Calibration& calibration, const EigenSums& sums) {
    CheckReport report;
    report.identity = std::move(identity);
    report.params = std::move(params);
    report.params["sign"] = sign;
    report.params["calibration"] = calibration.instance;
    report.params["eigenvalues"] = sums.count;
    report.lhs = from_u64(count).get_str();
    if (!is_integer(sums.power_sum)) {
        report.rhs = sums.power_sum.to_string();
        report.note = "eigenvalue power sum is not a rational integer";
        return report;
    }
    const Integer s = integer_value(sums.power_sum);
    const Integer predicted = main_term + sign * s;
    report.params["eigenvalue_sum"] = s.get_str();
    report.params["direct_sum"] = sums.direct.to_string();
    report.rhs = predicted.get_str();
    const bool coherent = sums.direct == sums.power_sum;
    report.outcome = coherent && predicted == from_u64(count) ? Outcome::Pass : Outcome::Fail;
    if (!coherent) report.note = "r-th power sum differs from the sum computed over the extension";
    return report;
}

}  // namespace

VarietySpec VarietySpec::artin_schreier(std::uint64_t p, int f, int d) {
    VarietySpec spec;
    spec.kind = VarietyKind::ArtinSchreier;
    spec.p = p;
    spec.f = f;
    spec.d = d;
    return spec;
}

VarietySpec VarietySpec::fermat(std::uint64_t p, int f, int d, int n, Elem c) {
    VarietySpec spec;
    spec.kind = VarietyKind::Fermat;
    spec.p = p;
    spec.f = f;
    spec.d = d;
    spec.n = n;
    spec.c = c;
    return spec;
}

nlohmann::ordered_json VarietySpec::to_json() const {
    Json out;
    out["kind"] = kind == VarietyKind::ArtinSchreier ? "artin_schreier" : "fermat";
    out["p"] = p;
    out["f"] = f;
    out["d"] = d;
    if (kind == VarietyKind::Fermat) {
        out["n"] = n;
        out["c"] = c;
    }
    return out;
}

std::uint64_t count_points(const VarietySpec& spec, int r, const CountOptions& options) {
    validate(spec, r);
    const auto q = base_order(spec.p, spec.f);
    auto Q = nt::checked_pow(q, static_cast<unsigned>(r), std::uint64_t{1} << 62);
    if (!Q || cells(spec, *Q) > options.max_cells) fail(ErrorCode::BudgetExceeded, "enumeration exceeds the cell budget");
    auto k = ff::make_field(spec.p, spec.f, options.field);
    const auto ext = extension(k, r, options.field);
    if (spec.kind == VarietyKind::ArtinSchreier) return count_artin_schreier(ext.K, q, spec.d, options.jobs);
    return count_fermat(ext.K, spec.d, spec.n, ext.embed(spec.c), options.jobs);
}

const Calibration& artin_schreier_calibration() {
    static const Calibration calibration = [] {
        auto k = ff::make_field(5, 1);
        for (int r = 1; r <= 3; ++r) {
            const auto sums = artin_schreier_sums(k, extension(k, r, {}), 2, r);
            if (sums.power_sum.is_zero()) continue;
            const auto count = count_points(VarietySpec::artin_schreier(5, 1, 2), r);
            Calibration out;
            out.sign = calibrated_sign(from_u64(count) - power_of(5, r) - 1, sums.power_sum, "Artin-Schreier");
            out.instance = {{"p", 5}, {"f", 1}, {"d", 2}, {"r", r}};
            return out;
        }
        fail(ErrorCode::Internal, "no Artin-Schreier calibration instance has a nonzero eigenvalue sum");
    }();
    return calibration;
}

const Calibration& fermat_calibration() {
    static const Calibration calibration = [] {
        auto k = ff::make_field(5, 1);
        const auto sums = fermat_sums(k, extension(k, 1, {}), 4, 2, 1, 1);
        const auto count = count_points(VarietySpec::fermat(5, 1, 4, 2, 1), 1);
        Calibration out;
        out.sign = calibrated_sign(from_u64(count) - 6, sums.power_sum, "Fermat");
        out.instance = {{"p", 5}, {"f", 1}, {"d", 4}, {"n", 2}, {"c", 1}, {"r", 1}};
        return out;
    }();
    return calibration;
}

int fermat_sign(int n) { return n % 2 == 0 ? fermat_calibration().sign : -fermat_calibration().sign; }

CheckReport lefschetz_check_artin_schreier(std::uint64_t p, int f, int d, int r, const CountOptions& options) {
    const auto spec = VarietySpec::artin_schreier(p, f, d);
    validate(spec, r);
    Json params = spec.to_json();
    params["r"] = r;
    const std::string identity = "lefschetz_artin_schreier";
    try {
        const auto count = count_points(spec, r, options);
        auto k = ff::make_field(p, f, options.field);
        const auto sums = artin_schreier_sums(k, extension(k, r, options.field), d, r);
        const auto& calibration = artin_schreier_calibration();
        return finish(identity, std::move(params), count, power_of(k->order(), r) + 1, calibration.sign, calibration,
                      sums);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::BudgetExceeded || e.code() == ErrorCode::FieldTooLarge) {
            return budget_report(identity, std::move(params), e.what());
        }
        throw;
    }
}

CheckReport lefschetz_check_fermat(std::uint64_t p, int f, int d, int n, Elem c, int r, const CountOptions& options) {
    const auto spec = VarietySpec::fermat(p, f, d, n, c);
    validate(spec, r);
    Json params = spec.to_json();
    params["r"] = r;
    const std::string identity = "lefschetz_fermat";
    try {
        const auto count = count_points(spec, r, options);
        auto k = ff::make_field(p, f, options.field);
        const auto sums = fermat_sums(k, extension(k, r, options.field), d, n, c, r);
        Integer main_term = 0;
        for (int i = 0; i < n; ++i) main_term += power_of(k->order(), r * i);
        return finish(identity, std::move(params), count, main_term, fermat_sign(n), fermat_calibration(), sums);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::BudgetExceeded || e.code() == ErrorCode::FieldTooLarge) {
            return budget_report(identity, std::move(params), e.what());
        }
        throw;
    }
}

}  // namespace gjsum::counts
