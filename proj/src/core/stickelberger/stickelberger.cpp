#include "stickelberger/stickelberger.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "chars/characters.hpp"
#include "report/report_sink.hpp"
#include "sums/jacobi_table.hpp"
#include "sums/sums.hpp"
#include "util/error.hpp"
#include "util/numtheory.hpp"

#ifndef GJSUM_DATA_DIR
#define GJSUM_DATA_DIR "data"
#endif

namespace gjsum::stickelberger {

using Json = nlohmann::ordered_json;

namespace {

std::shared_ptr<const std::vector<int>> shared_units(int d) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const std::vector<int>>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[d];
    if (!slot) slot = std::make_shared<const std::vector<int>>(nt::units_mod(d));
    return slot;
}

void require_modulus(int d) {
    if (d < 3) fail(ErrorCode::BadModulus, "d must be at least 3");
}

Rational fractional_part(std::int64_t numerator, int d) {
    Rational out(nt::mod(numerator, d), d);
    out.canonicalize();
    return out;
}

std::string tuple_text(std::span<const int> avec) {
    std::string out = "(";
    for (std::size_t i = 0; i < avec.size(); ++i) out += (i ? "," : "") + std::to_string(avec[i]);
    return out + ")";
}

std::string vector_text(std::span<const Integer> v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
    return out + "]";
}

template <class Visit>
void for_each_tuple(int d, int n, Visit&& visit) {
    std::vector<int> keys(static_cast<std::size_t>(n), 0);
    while (true) {
        visit(std::span<const int>(keys));
        int j = n - 1;
        for (; j >= 0; --j) {
            if (++keys[j] < d) break;
            keys[j] = 0;
        }
        if (j < 0) return;
    }
}

}  // namespace

GroupRingQ::GroupRingQ(int d) : d_(d), units_(shared_units(d)), position_(d, -1), coeffs_(units_->size()) {
    if (d < 1) fail(ErrorCode::BadModulus, "d must be positive");
    for (std::size_t i = 0; i < units_->size(); ++i) position_[(*units_)[i]] = static_cast<int>(i);
}

GroupRingQ GroupRingQ::sigma(int d, std::int64_t h) {
    GroupRingQ out(d);
    out.add(h, 1);
    return out;
}

GroupRingQ GroupRingQ::trace(int d) {
    GroupRingQ out(d);
    for (auto& c : out.coeffs_) c = 1;
    return out;
}

std::size_t GroupRingQ::position(std::int64_t h) const {
    const int pos = position_[nt::mod(h, d_)];
    if (pos < 0) fail(ErrorCode::NotCoprime, std::to_string(h) + " is not a unit mod " + std::to_string(d_));
    return static_cast<std::size_t>(pos);
}

const Rational& GroupRingQ::coefficient(std::int64_t h) const { return coeffs_[position(h)]; }

void GroupRingQ::add(std::int64_t h, const Rational& value) { coeffs_[position(h)] += value; }

GroupRingQ GroupRingQ::act(std::int64_t g) const {
    GroupRingQ out(d_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out.coeffs_[out.position(static_cast<std::int64_t>((*units_)[i]) * nt::mod(g, d_))] = coeffs_[i];
    }
    return out;
}

bool GroupRingQ::is_minus() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[position(d_ - (*units_)[i])] != -coeffs_[i]) return false;
    }
    return true;
}

bool GroupRingQ::is_integral() const {
    for (const auto& c : coeffs_) {
        if (c.get_den() != 1) return false;
    }
    return true;
}

std::vector<Integer> GroupRingQ::integer_coefficients() const {
    if (!is_integral()) fail(ErrorCode::IntegralityViolation, "element " + to_string() + " is not integral");
    std::vector<Integer> out;
    for (const auto& c : coeffs_) out.push_back(c.get_num());
    return out;
}

GroupRingQ& GroupRingQ::operator+=(const GroupRingQ& other) {
    if (other.d_ != d_) fail(ErrorCode::BadModulus, "group rings of different moduli");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

GroupRingQ& GroupRingQ::operator-=(const GroupRingQ& other) {
    if (other.d_ != d_) fail(ErrorCode::BadModulus, "group rings of different moduli");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

GroupRingQ GroupRingQ::scaled(const Rational& factor) const {
    GroupRingQ out = *this;
    for (auto& c : out.coeffs_) c *= factor;
    return out;
}

std::string GroupRingQ::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!out.empty()) out += " + ";
        out += coeffs_[i].get_str() + "*s" + std::to_string((*units_)[i]);
    }
    return out.empty() ? "0" : out;
}

Json GroupRingQ::to_json() const {
    Json coeffs = Json::object();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs[std::to_string((*units_)[i])] = coeffs_[i].get_str();
    return {{"d", d_}, {"coefficients", coeffs}};
}

GroupRingQ theta(int d, std::int64_t a) {
    require_modulus(d);
    GroupRingQ out(d);
    for (int h : out.units()) {
        const auto inverse = *nt::inverse_mod(h, d);
        out.add(inverse, fractional_part(-static_cast<std::int64_t>(h) * a, d));
    }
    return out;
}

GroupRingQ theta_vec(int d, std::span<const int> avec) {
    require_modulus(d);
    if (!chars::admissible(avec, d)) fail(ErrorCode::NotAdmissible, "tuple " + tuple_text(avec) + " is not admissible");
    GroupRingQ out(d);
    std::int64_t total = 0;
    for (int a : avec) {
        out += theta(d, a);
        total += a;
    }
    out -= theta(d, total);
    if (!out.is_integral()) fail(ErrorCode::IntegralityViolation, "theta of " + tuple_text(avec) + " is not integral");
    return out;
}

GroupRingQ theta_tilde(int d, std::int64_t a) {
    require_modulus(d);
    if (nt::mod(a, d) == 0) fail(ErrorCode::ZeroExponent, "theta~ needs a nonzero exponent");
    return theta(d, a) - GroupRingQ::trace(d).scaled(Rational(1, 2));
}

CheckReport check_distribution(int d, int n, int a) {
    require_modulus(d);
    if (n < 1 || d % n != 0) fail(ErrorCode::BadDivisor, std::to_string(n) + " does not divide " + std::to_string(d));
    if (nt::mod(static_cast<std::int64_t>(n) * a, d) == 0) fail(ErrorCode::PreconditionFailed, "n*a = 0 mod d");
    GroupRingQ rhs(d);
    for (int i = 0; i < n; ++i) {
        const std::int64_t shifted = a + static_cast<std::int64_t>(d / n) * i;
        if (nt::mod(shifted, d) == 0) fail(ErrorCode::PreconditionFailed, "a + (d/n)i = 0 mod d for i = " + std::to_string(i));
        rhs += theta_tilde(d, shifted);
    }
    const auto lhs = theta_tilde(d, static_cast<std::int64_t>(n) * a);
    CheckReport report;
    report.identity = "theta_distribution";
    report.params = {{"d", d}, {"n", n}, {"a", a}};
    report.lhs = lhs.to_string();
    report.rhs = rhs.to_string();
    report.outcome = lhs == rhs ? Outcome::Pass : Outcome::Fail;
    return report;
}

std::vector<Integer> project(const cyclo::PrimeSplitting& split, const GroupRingQ& x) {
    if (x.d() != split.d()) fail(ErrorCode::BadModulus, "element and splitting use different moduli");
    const auto coeffs = x.integer_coefficients();
    std::vector<Integer> out(split.coset_reps().size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) out[split.coset_index(x.units()[i])] += coeffs[i];
    return out;
}

namespace {

std::vector<Integer> to_integers(std::span<const int> v) { return {v.begin(), v.end()}; }

Json splitting_params(const cyclo::PrimeSplitting& split) {
    return {{"d", split.d()}, {"p", split.p()}, {"f", split.f()}};
}

}  // namespace

CheckReport check_factorization(const cyclo::PrimeSplitting& split, std::span<const int> avec) {
    const auto expected = project(split, theta_vec(split.d(), avec));
    chars::RootsOfUnity mu(split.residue_field(), split.d(), split.omega());
    const auto j = sums::jacobi_sum(mu, avec);
    const auto valuations = to_integers(split.valuations(j));
    CheckReport report;
    report.identity = "stickelberger_factorization";
    report.params = splitting_params(split);
    report.params["a"] = std::vector<int>(avec.begin(), avec.end());
    report.lhs = vector_text(valuations);
    report.rhs = vector_text(expected);
    report.outcome = valuations == expected ? Outcome::Pass : Outcome::Fail;
    return report;
}

std::vector<CheckReport> factorization_suite(int d, std::uint64_t p, int max_arity, const ff::FieldOptions& options) {
    require_modulus(d);
    if (max_arity < 2) fail(ErrorCode::ArityTooSmall, "arity cap must be at least 2");
    std::vector<CheckReport> out;
    const int f = static_cast<int>(nt::multiplicative_order(p % d, d));
    Json base = {{"d", d}, {"p", p}, {"f", f}};
    cyclo::SplittingPtr split;
    try {
        split = cyclo::make_splitting(d, p, options, max_arity - 1);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::FieldTooLarge) throw;
        for (int n = 2; n <= max_arity; ++n) {
            CheckReport report;
            report.identity = "stickelberger_factorization";
            report.params = base;
            report.params["n"] = n;
            report.outcome = Outcome::BudgetExceeded;
            report.instances = 0;
            report.note = "residue field of order " + std::to_string(p) + "^" + std::to_string(f) +
                          " exceeds the enumeration bound " + std::to_string(options.max_order);
            out.push_back(std::move(report));
        }
        return out;
    }
    ReportSink sink(out, Granularity::Batch);

    sink.begin("projected_trace", base);
    {
        const auto lhs = project(*split, GroupRingQ::trace(d));
        const std::vector<Integer> rhs(lhs.size(), Integer(f));
        sink.record(lhs == rhs, Json::object(), [&] { return std::pair{vector_text(lhs), vector_text(rhs)}; });
    }
    sink.end();

    chars::RootsOfUnity mu(split->residue_field(), d, split->omega());
    sums::JacobiTable table(mu);
    const auto phi = static_cast<std::size_t>(cyclo::context(d).degree());
    std::vector<GroupRingQ> thetas;
    for (int a = 0; a < d; ++a) thetas.push_back(theta(d, a));
    for (int n = 2; n <= max_arity; ++n) {
        auto params = base;
        params["n"] = n;
        sink.begin("stickelberger_factorization", params);
        const auto& values = table.values(n);
        std::size_t index = 0;
        for_each_tuple(d, n, [&](std::span<const int> keys) {
            const auto i = index++;
            if (!chars::admissible(keys, d)) return;
            GroupRingQ element(d);
            int total = 0;
            for (int a : keys) {
                element += thetas[a];
                total = (total + a) % d;
            }
            element -= thetas[total];
            const auto expected = project(*split, element);
            const auto valuations = to_integers(split->valuations(std::span<const std::int64_t>(values).subspan(i * phi, phi)));
            sink.record(valuations == expected, {{"a", std::vector<int>(keys.begin(), keys.end())}},
                        [&] { return std::pair{vector_text(valuations), vector_text(expected)}; });
        });
        sink.end();
    }
    return out;
}

lattice::Matrix ideal_lattice(int d) {
    require_modulus(d);
    const auto phi = nt::units_mod(d).size();
    lattice::Matrix generators(0, phi);
    for (int a = 1; a < d; ++a) {
        for (int b = 1; b < d; ++b) {
            if ((a + b) % d == 0) continue;
            const int pair[] = {a, b};
            generators.append_row(theta_vec(d, pair).integer_coefficients());
        }
    }
    auto basis = lattice::hermite_form(generators);
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        GroupRingQ element(d);
        for (std::size_t k = 0; k < phi; ++k) element.add(element.units()[k], Rational(basis(i, k)));
        for (int h : element.units()) {
            if (!lattice::contains(basis, element.act(h).integer_coefficients())) {
                fail(ErrorCode::Internal, "Stickelberger lattice is not stable under sigma_" + std::to_string(h));
            }
        }
    }
    return basis;
}

HMinusTable HMinusTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open h^- table " + path.string());
    HMinusTable table;
    table.source_ = path.string();
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string d_text, value_text;
        if (!(fields >> d_text >> value_text)) fail(ErrorCode::Io, "malformed h^- line: " + line);
        if (!header) {
            if (d_text != "d" || value_text != "hminus") fail(ErrorCode::Io, "h^- table lacks its header");
            header = true;
            continue;
        }
        try {
            table.values_[std::stoi(d_text)] = Integer(value_text);
        } catch (const std::exception&) {
            fail(ErrorCode::Io, "malformed h^- line: " + line);
        }
    }
    return table;
}

HMinusTable HMinusTable::bundled() {
    if (const char* env = std::getenv("GJSUM_HMINUS_TABLE"); env && *env) return load(env);
    return load(std::filesystem::path(GJSUM_DATA_DIR) / "hminus_v1.tsv");
}

std::optional<Integer> HMinusTable::lookup(int d) const {
    auto it = values_.find(d);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

namespace {

// Coordinates of a minus-part vector on the units below d/2.
lattice::Matrix minus_coordinates(const lattice::Matrix& m, const std::vector<int>& units, int d) {
    std::vector<std::size_t> columns;
    for (std::size_t k = 0; k < units.size(); ++k) {
        if (2 * units[k] < d) columns.push_back(k);
    }
    lattice::Matrix out(m.rows(), columns.size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) out(i, j) = m(i, columns[j]);
    }
    return out;
}

// The matrix of x -> x + sign * sigma_{-1} x on row vectors over the units.
lattice::Matrix conjugation_map(const std::vector<int>& units, int d, int sign) {
    lattice::Matrix out(units.size(), units.size());
    for (std::size_t k = 0; k < units.size(); ++k) {
        out(k, k) += 1;
        const auto it = std::lower_bound(units.begin(), units.end(), d - units[k]);
        out(k, static_cast<std::size_t>(it - units.begin())) += sign;
    }
    return out;
}

std::optional<Integer> index_of(const lattice::Matrix& coordinates) {
    const auto volume = lattice::covolume(coordinates);
    if (volume == 0) return std::nullopt;
    return volume;
}

Json optional_integer(const std::optional<Integer>& value) {
    if (!value) return nullptr;
    if (value->fits_slong_p()) return value->get_si();
    return value->get_str();
}

}  // namespace

IndexReport minus_index_report(int d, const HMinusTable& table) {
    require_modulus(d);
    IndexReport report;
    report.d = d;
    report.r = static_cast<int>(nt::distinct_prime_factors(static_cast<std::uint64_t>(d)).size());
    report.s = std::max(0, report.r - 2);
    const auto units = nt::units_mod(d);
    report.minus_rank = units.size() / 2;

    const auto basis = ideal_lattice(d);
    // S cap Z[G]^-: combinations y * basis killed by 1 + sigma_{-1}
    const auto kernel = lattice::left_kernel(basis * conjugation_map(units, d, 1));
    const auto literal = minus_coordinates(kernel * basis, units, d);
    report.literal_rank = lattice::rank(literal);
    report.literal_index = index_of(literal);
    // (1 - sigma_{-1}) S, isomorphic to S / (S cap Z[G]^+)
    report.quotient_index = index_of(minus_coordinates(basis * conjugation_map(units, d, -1), units, d));

    report.hminus = table.lookup(d);
    if (report.hminus) {
        report.formula_r = *report.hminus * (Integer(1) << report.r);
        report.formula_s = *report.hminus * (Integer(1) << report.s);
    }
    report.ambiguity = !(report.formula_r && report.literal_index == report.formula_r &&
                         report.quotient_index == report.formula_r);
    report.note =
        "the index formula is stated with 2^r while s = max(0, r-2) is defined but unused; the literal "
        "intersection S cap Z[G]^- and the quotient-style minus part (1 - sigma_{-1})S are both reported "
        "beside 2^r h^- and 2^s h^-, and no equality is asserted";
    return report;
}

Json IndexReport::to_json() const {
    Json out;
    out["d"] = d;
    out["r"] = r;
    out["s"] = s;
    out["minus_rank"] = minus_rank;
    out["literal_rank"] = literal_rank;
    out["finite"] = finite();
    out["computed_index"] = optional_integer(literal_index);
    out["quotient_index"] = optional_integer(quotient_index);
    out["hminus"] = optional_integer(hminus);
    out["formula_2r_hminus"] = optional_integer(formula_r);
    out["formula_2s_hminus"] = optional_integer(formula_s);
    out["matches_2r"] = formula_r.has_value() && literal_index == formula_r;
    out["matches_2s"] = formula_s.has_value() && literal_index == formula_s;
    out["quotient_matches_2r"] = formula_r.has_value() && quotient_index == formula_r;
    out["quotient_matches_2s"] = formula_s.has_value() && quotient_index == formula_s;
    out["normalization_ambiguity"] = ambiguity;
    out["note"] = note;
    return out;
}

CheckReport check_minus_basis(int d) {
    require_modulus(d);
    const auto units = nt::units_mod(d);
    lattice::Matrix rows(0, units.size());
    bool all_minus = true;
    std::vector<int> members;
    for (int a : units) {
        if (2 * a >= d) continue;
        members.push_back(a);
        const auto element = theta_tilde(d, a);
        all_minus = all_minus && element.is_minus();
        // 2d * theta~ is integral
        rows.append_row(element.scaled(Rational(2 * d)).integer_coefficients());
    }
    const auto rank = lattice::rank(rows);
    const auto expected = units.size() / 2;
    CheckReport report;
    report.identity = "minus_basis";
    report.params = {{"d", d}, {"a", members}};
    report.lhs = std::to_string(rank);
    report.rhs = std::to_string(expected);
    const bool pass = members.size() == expected && all_minus && rank == expected;
    report.outcome = pass ? Outcome::Pass : Outcome::Fail;
    if (!all_minus) report.note = "an element lies outside the minus eigenspace";
    return report;
}

std::vector<CheckReport> theta_identities(int d) {
    require_modulus(d);
    std::vector<CheckReport> out;
    ReportSink sink(out, Granularity::Batch);
    const Json base = {{"d", d}};
    const auto trace = GroupRingQ::trace(d);
    std::vector<GroupRingQ> thetas;
    for (int a = 0; a < d; ++a) thetas.push_back(theta(d, a));

    sink.begin("theta_reflection", base);
    for (int a = 1; a < d; ++a) {
        const auto lhs = thetas[a] + thetas[d - a];
        sink.record(lhs == trace, {{"a", a}}, [&] { return std::pair{lhs.to_string(), trace.to_string()}; });
    }
    sink.end();

    sink.begin("theta_tilde_odd", base);
    for (int a = 1; a < d; ++a) {
        const auto lhs = theta_tilde(d, d - a);
        const auto rhs = theta_tilde(d, a).scaled(-1);
        sink.record(lhs == rhs && rhs.is_minus(), {{"a", a}}, [&] { return std::pair{lhs.to_string(), rhs.to_string()}; });
    }
    sink.end();

    sink.begin("theta_distribution", base);
    for (int n = 2; n <= d; ++n) {
        if (d % n != 0) continue;
        for (int a = 1; a < d; ++a) {
            if ((n * a) % d == 0) continue;
            bool ok = true;
            for (int i = 0; i < n; ++i) ok = ok && (a + (d / n) * i) % d != 0;
            if (!ok) continue;
            const auto report = check_distribution(d, n, a);
            sink.record(report.pass(), {{"n", n}, {"a", a}}, [&] { return std::pair{report.lhs, report.rhs}; });
        }
    }
    sink.end();

    sink.begin("theta_equivariance", base);
    for (int h : thetas[0].units()) {
        for (int a = 0; a < d; ++a) {
            const auto lhs = thetas[a].act(h);
            const auto& rhs = thetas[(static_cast<std::int64_t>(h) * a) % d];
            sink.record(lhs == rhs, {{"h", h}, {"a", a}}, [&] { return std::pair{lhs.to_string(), rhs.to_string()}; });
        }
    }
    sink.end();

    // Integrality and theta(a) + theta(-a) = (n - 1) T on integer numerators over d.
    const auto& units = thetas[0].units();
    const std::size_t phi = units.size();
    std::vector<std::int64_t> numerators(static_cast<std::size_t>(d) * phi);
    for (int a = 0; a < d; ++a) {
        for (std::size_t k = 0; k < phi; ++k) {
            const Rational scaled = thetas[a].coefficients()[k] * d;
            if (scaled.get_den() != 1) fail(ErrorCode::Internal, "theta numerator is not integral");
            numerators[static_cast<std::size_t>(a) * phi + k] = scaled.get_num().get_si();
        }
    }
    for (int n = 2; n <= 4; ++n) {
        auto params = base;
        params["n"] = n;
        sink.begin("theta_integrality", params);
        std::vector<std::int64_t> sum(phi), reflected(phi);
        for_each_tuple(d, n, [&](std::span<const int> keys) {
            if (!chars::admissible(keys, d)) return;
            std::fill(sum.begin(), sum.end(), 0);
            std::fill(reflected.begin(), reflected.end(), 0);
            int total = 0;
            for (int a : keys) {
                total = (total + a) % d;
                for (std::size_t k = 0; k < phi; ++k) {
                    sum[k] += numerators[static_cast<std::size_t>(a) * phi + k];
                    reflected[k] += numerators[static_cast<std::size_t>((d - a) % d) * phi + k];
                }
            }
            bool integral = true, reflection = true;
            for (std::size_t k = 0; k < phi; ++k) {
                sum[k] -= numerators[static_cast<std::size_t>(total) * phi + k];
                reflected[k] -= numerators[static_cast<std::size_t>((d - total) % d) * phi + k];
                integral = integral && sum[k] % d == 0;
                reflection = reflection && sum[k] + reflected[k] == static_cast<std::int64_t>(n - 1) * d;
            }
            sink.record(integral && reflection, {{"a", std::vector<int>(keys.begin(), keys.end())}}, [&] {
                const auto element = theta_vec(d, keys) + theta_vec(d, [&] {
                    std::vector<int> neg;
                    for (int a : keys) neg.push_back((d - a) % d);
                    return neg;
                }());
                return std::pair{element.to_string(), trace.scaled(n - 1).to_string()};
            });
        });
        sink.end();
    }
    return out;
}

}  // namespace gjsum::stickelberger
