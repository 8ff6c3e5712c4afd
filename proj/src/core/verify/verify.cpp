#include "verify/verify.hpp"

#include <atomic>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "counts/counts.hpp"
#include "relations/suite.hpp"
#include "stickelberger/stickelberger.hpp"
#include "util/numtheory.hpp"
#include "weil/weil.hpp"

namespace gjsum::verify {

namespace {

using Json = nlohmann::ordered_json;

struct Unit {
    std::string identity;  // used for the failure report when the unit throws
    Json params;
    std::function<std::vector<CheckReport>()> run;
};

constexpr std::uint64_t kLefschetzOrders[] = {3, 4, 5, 7, 9};
constexpr std::uint64_t kFermatSurfaceOrders[] = {5, 7};
constexpr int kWeilLevels[] = {3, 4, 5, 7, 8, 9, 12};
constexpr int kStickelbergerMaxLevel = 12;
constexpr std::uint64_t kStickelbergerMaxPrime = 100;
constexpr int kThetaMaxLevel = 30;
constexpr std::uint64_t kWeilPrimeBound = 50;
constexpr int kMaxExtension = 3;

std::pair<std::uint64_t, int> prime_power(std::uint64_t q) {
    const auto factors = nt::factorize(q);
    return {factors.front().first, factors.front().second};
}

bool field_selected(const VerifyConfig& config, std::uint64_t p, int f) {
    return (!config.p || *config.p == p) && (!config.f || *config.f == f);
}

bool level_selected(const VerifyConfig& config, int d) { return !config.d || *config.d == d; }

std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n < bound; ++n) {
        if (nt::is_prime(n)) out.push_back(n);
    }
    return out;
}

void relation_units(const VerifyConfig& config, std::vector<Unit>& units) {
    for (auto q : relation_field_orders()) {
        if (q > config.max_q) continue;
        const auto [p, f] = prime_power(q);
        if (!field_selected(config, p, f)) continue;
        for (auto dd : nt::divisors(q - 1)) {
            const int d = static_cast<int>(dd);
            if (!level_selected(config, d)) continue;
            units.push_back({"relation_suite", {{"p", p}, {"f", f}, {"d", d}}, [&config, p, f, d] {
                                 relations::SuiteOptions options;
                                 options.max_arity = config.max_arity;
                                 options.max_degree = config.max_degree;
                                 options.granularity = config.granularity;
                                 options.field_options = config.field_options;
                                 return relations::run_full_suite(ff::make_field(p, f, config.field_options), d,
                                                                  options);
                             }});
        }
    }
}

void stickelberger_units(const VerifyConfig& config, std::vector<Unit>& units) {
    for (int d = 3; d <= kStickelbergerMaxLevel; ++d) {
        if (!level_selected(config, d)) continue;
        for (auto p : primes_below(kStickelbergerMaxPrime + 1)) {
            if (d % static_cast<int>(p) == 0 || (config.p && *config.p != p)) continue;
            units.push_back({"stickelberger_factorization", {{"d", d}, {"p", p}}, [&config, d, p] {
                                 return stickelberger::factorization_suite(d, p, 3, config.field_options);
                             }});
        }
    }
    for (int d = 3; d <= kThetaMaxLevel; ++d) {
        if (!level_selected(config, d)) continue;
        units.push_back({"theta_identities", {{"d", d}}, [d] {
                             auto reports = stickelberger::theta_identities(d);
                             reports.push_back(stickelberger::check_minus_basis(d));
                             return reports;
                         }});
    }
}

void weil_units(const VerifyConfig& config, std::vector<Unit>& units) {
    for (int d : kWeilLevels) {
        if (!level_selected(config, d)) continue;
        for (auto p : primes_below(kWeilPrimeBound)) {
            if (d % static_cast<int>(p) == 0 || (config.p && *config.p != p)) continue;
            units.push_back({"weil", {{"d", d}, {"p", p}}, [&config, d, p] {
                                 std::vector<CheckReport> reports;
                                 reports.push_back(weil::rank_report(d, p, config.field_options).to_check());
                                 const auto lattice = weil::relation_lattice(d, p, 2, config.field_options);
                                 reports.push_back(lattice.torsion_check());
                                 reports.push_back(lattice.span_check());
                                 return reports;
                             }});
        }
    }
}

void lefschetz_units(const VerifyConfig& config, std::vector<Unit>& units) {
    counts::CountOptions options;
    options.max_cells = config.max_cells;
    options.field = config.field_options;
    for (auto q : kLefschetzOrders) {
        if (q > config.max_q) continue;
        const auto [p, f] = prime_power(q);
        if (!field_selected(config, p, f)) continue;
        for (auto dd : nt::divisors(q - 1)) {
            const int d = static_cast<int>(dd);
            if (!level_selected(config, d)) continue;
            units.push_back({"lefschetz", {{"p", p}, {"f", f}, {"d", d}}, [options, p, f, d] {
                                 std::vector<CheckReport> reports;
                                 for (int r = 1; r <= kMaxExtension; ++r) {
                                     reports.push_back(counts::lefschetz_check_artin_schreier(p, f, d, r, options));
                                 }
                                 for (ff::Elem c : {1u, 2u}) {
                                     for (int r = 1; r <= kMaxExtension; ++r) {
                                         reports.push_back(counts::lefschetz_check_fermat(p, f, d, 2, c, r, options));
                                     }
                                 }
                                 return reports;
                             }});
        }
    }
    for (auto q : kFermatSurfaceOrders) {
        if (q > config.max_q) continue;
        const auto [p, f] = prime_power(q);
        if (!field_selected(config, p, f)) continue;
        for (auto dd : nt::divisors(q - 1)) {
            const int d = static_cast<int>(dd);
            if (d > 4 || !level_selected(config, d)) continue;
            units.push_back({"lefschetz_surface", {{"p", p}, {"f", f}, {"d", d}}, [options, p, f, d] {
                                 return std::vector<CheckReport>{
                                     counts::lefschetz_check_fermat(p, f, d, 3, 1, 1, options)};
                             }});
        }
    }
}

std::vector<CheckReport> run_unit(const Unit& unit) {
    try {
        return unit.run();
    } catch (const std::exception& e) {
        CheckReport report;
        report.identity = unit.identity;
        report.params = unit.params;
        report.outcome = Outcome::Fail;
        report.instances = 0;
        report.note = e.what();
        return {report};
    }
}

bool selected(const VerifyConfig& config, const CheckReport& report) {
    if (config.only.empty()) return true;
    for (const auto& name : config.only) {
        if (report.identity == name) return true;
        if (report.identity.size() > name.size() && report.identity.starts_with(name) &&
            report.identity[name.size()] == '_') {
            return true;
        }
    }
    return false;
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
    for (auto suite : {Suite::Relations, Suite::Stickelberger, Suite::Weil, Suite::Lefschetz, Suite::All}) {
        if (suite_name(suite) == name) return suite;
    }
    return std::nullopt;
}

std::string_view suite_name(Suite suite) noexcept {
    switch (suite) {
        case Suite::Relations: return "relations";
        case Suite::Stickelberger: return "stickelberger";
        case Suite::Weil: return "weil";
        case Suite::Lefschetz: return "lefschetz";
        case Suite::All: return "all";
    }
    return "unknown";
}

const std::vector<std::uint64_t>& relation_field_orders() {
    static const std::vector<std::uint64_t> orders = {3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27};
    return orders;
}

VerifySummary run_verify(const VerifyConfig& config, const std::function<void(const CheckReport&)>& emit) {
    std::vector<Unit> units;
    const bool all = config.suite == Suite::All;
    if (all || config.suite == Suite::Relations) relation_units(config, units);
    if (all || config.suite == Suite::Stickelberger) stickelberger_units(config, units);
    if (all || config.suite == Suite::Weil) weil_units(config, units);
    if (all || config.suite == Suite::Lefschetz) lefschetz_units(config, units);

    VerifySummary summary;
    auto deliver = [&](const std::vector<CheckReport>& reports) {
        for (const auto& report : reports) {
            if (!selected(config, report)) continue;
            ++summary.reports;
            if (!report.pass()) ++summary.failed;
            emit(report);
        }
    };

    const unsigned width = std::min<unsigned>(std::max(1u, config.jobs), static_cast<unsigned>(units.size()));
    if (width <= 1) {
        for (const auto& unit : units) deliver(run_unit(unit));
        return summary;
    }

    std::vector<std::optional<std::vector<CheckReport>>> slots(units.size());
    std::mutex mutex;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < width; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < units.size() && !stop; i = next++) {
                auto result = run_unit(units[i]);
                std::lock_guard lock(mutex);
                slots[i] = std::move(result);
                ready.notify_all();
            }
        });
    }
    try {
        for (std::size_t i = 0; i < units.size(); ++i) {
            std::vector<CheckReport> reports;
            {
                std::unique_lock lock(mutex);
                ready.wait(lock, [&] { return slots[i].has_value(); });
                reports = std::move(*slots[i]);
                slots[i].reset();
            }
            deliver(reports);
        }
    } catch (...) {
        stop = true;
        throw;
    }
    return summary;
}

}  // namespace gjsum::verify
