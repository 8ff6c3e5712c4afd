#include "gjsum/gjsum.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "chars/characters.hpp"
#include "counts/counts.hpp"
#include "cyclo/prime_splitting.hpp"
#include "stickelberger/stickelberger.hpp"
#include "sums/sums.hpp"
#include "util/error.hpp"
#include "util/numtheory.hpp"
#include "verify/verify.hpp"
#include "weil/weil.hpp"

struct gjsum_field {
    gjsum::ff::FieldPtr field;
};

struct gjsum_verify_config {
    gjsum::verify::VerifyConfig config;
};

namespace {

using namespace gjsum;

thread_local std::string last_error;

struct SinkStopped {};

ff::FieldOptions default_field_options() {
    ff::FieldOptions options;
    if (const char* env = std::getenv("GJSUM_CACHE_DIR"); env && *env) options.cache_dir = env;
    return options;
}

gjsum_status status_of(ErrorCode code) { return static_cast<gjsum_status>(static_cast<int>(code) + 1); }

gjsum_status fail_with(gjsum_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Runs body, mapping library errors to status codes and recording their messages.
template <typename Body>
gjsum_status guarded(Body&& body) {
    last_error.clear();
    try {
        body();
        return GJSUM_OK;
    } catch (const Error& e) {
        return fail_with(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail_with(GJSUM_E_OUT_OF_MEMORY, "out of memory");
    } catch (const std::exception& e) {
        return fail_with(GJSUM_E_INTERNAL, e.what());
    }
}

char* duplicate(const std::string& text) {
    auto* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

void require(bool condition, const char* what) {
    if (!condition) fail(ErrorCode::InvalidArgument, what);
}

std::vector<int> tuple(const int* avec, size_t n) {
    require(avec != nullptr || n == 0, "null exponent vector");
    return std::vector<int>(avec, avec + n);
}

int weight_or_minus_one(const cyclo::CyclotomicNumber& value, std::uint64_t q) {
    if (value.is_zero()) return -1;
    const auto w = cyclo::weil_weight(value, cyclo::Integer(static_cast<unsigned long>(q)));
    return w ? *w : -1;
}

counts::CountOptions count_options(uint64_t max_cells, unsigned jobs) {
    counts::CountOptions options;
    if (max_cells != 0) options.max_cells = max_cells;
    options.jobs = jobs == 0 ? 1 : jobs;
    options.field = default_field_options();
    options.field.max_order = std::uint64_t{1} << 26;
    return options;
}

counts::VarietySpec variety_spec(const gjsum_variety* variety) {
    require(variety != nullptr, "null variety");
    switch (variety->kind) {
        case GJSUM_ARTIN_SCHREIER: return counts::VarietySpec::artin_schreier(variety->p, variety->f, variety->d);
        case GJSUM_FERMAT:
            return counts::VarietySpec::fermat(variety->p, variety->f, variety->d, variety->n, variety->c);
    }
    fail(ErrorCode::InvalidArgument, "unknown variety kind");
}

ff::FieldOptions splitting_options() {
    auto options = default_field_options();
    options.max_order = std::uint64_t{1} << 26;
    return options;
}

}  // namespace

extern "C" {

const char* gjsum_status_name(gjsum_status status) {
    switch (status) {
        case GJSUM_OK: return "Ok";
        case GJSUM_E_OUT_OF_MEMORY: return "OutOfMemory";
        default: break;
    }
    const int index = static_cast<int>(status) - 1;
    if (index < 0 || index > static_cast<int>(ErrorCode::Internal)) return "Unknown";
    static thread_local std::string name;
    name = error_code_name(static_cast<ErrorCode>(index));
    return name.c_str();
}

const char* gjsum_last_error_message(void) { return last_error.c_str(); }

void gjsum_string_free(char* text) { std::free(text); }

gjsum_status gjsum_field_open(uint64_t p, int f, uint64_t max_order, const char* cache_dir, gjsum_field** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        auto options = default_field_options();
        if (max_order != 0) options.max_order = max_order;
        if (cache_dir) options.cache_dir = cache_dir;
        auto handle = std::make_unique<gjsum_field>();
        handle->field = ff::make_field(p, f, options);
        *out = handle.release();
    });
}

void gjsum_field_close(gjsum_field* field) { delete field; }

uint64_t gjsum_field_order(const gjsum_field* field) { return field ? field->field->order() : 0; }

gjsum_status gjsum_gauss_sum(const gjsum_field* field, int d, int64_t a, uint32_t psi_c, char** value, int* weight) {
    return guarded([&] {
        require(field != nullptr && value != nullptr, "null argument");
        const auto& k = field->field;
        const auto g = sums::gauss_sum(chars::additive_character(k, psi_c), chars::multiplicative_character(k, d, a));
        const int w = weight_or_minus_one(g, k->order());
        *value = duplicate(g.to_string());
        if (weight) *weight = w;
    });
}

gjsum_status gjsum_jacobi_sum(const gjsum_field* field, int d, const int* avec, size_t n, char** value, int* weight) {
    return guarded([&] {
        require(field != nullptr && value != nullptr, "null argument");
        const auto exponents = tuple(avec, n);
        if (exponents.size() < 2) fail(ErrorCode::ArityTooSmall, "a Jacobi sum needs at least two characters");
        if (!chars::admissible(exponents, d)) fail(ErrorCode::NotAdmissible, "exponent tuple is not admissible");
        const auto& k = field->field;
        const chars::RootsOfUnity mu(k, d);
        const auto j = sums::jacobi_sum(mu, exponents);
        const int w = weight_or_minus_one(j, k->order());
        *value = duplicate(j.to_string());
        if (weight) *weight = w;
    });
}

gjsum_status gjsum_count_points(const gjsum_variety* variety, int r, uint64_t max_cells, unsigned jobs,
                                uint64_t* points) {
    return guarded([&] {
        require(points != nullptr, "null output");
        *points = counts::count_points(variety_spec(variety), r, count_options(max_cells, jobs));
    });
}

gjsum_status gjsum_lefschetz(const gjsum_variety* variety, int r, uint64_t max_cells, unsigned jobs,
                             char** report_json, int* passed) {
    return guarded([&] {
        require(report_json != nullptr, "null output");
        const auto spec = variety_spec(variety);
        const auto options = count_options(max_cells, jobs);
        const auto report =
            spec.kind == counts::VarietyKind::ArtinSchreier
                ? counts::lefschetz_check_artin_schreier(spec.p, spec.f, spec.d, r, options)
                : counts::lefschetz_check_fermat(spec.p, spec.f, spec.d, spec.n, spec.c, r, options);
        *report_json = duplicate(report.to_json().dump());
        if (passed) *passed = report.pass() ? 1 : 0;
    });
}

gjsum_status gjsum_stickelberger_check(int d, uint64_t p, const int* avec, size_t n, char** report_json,
                                       int* passed) {
    return guarded([&] {
        require(report_json != nullptr, "null output");
        const auto exponents = tuple(avec, n);
        const auto split = cyclo::make_splitting(d, p, splitting_options(), static_cast<int>(exponents.size()));
        const auto report = stickelberger::check_factorization(*split, exponents);
        *report_json = duplicate(report.to_json().dump());
        if (passed) *passed = report.pass() ? 1 : 0;
    });
}

gjsum_status gjsum_weil_valuations(int d, uint64_t p, const int* avec, size_t n, char** report_json, int* passed) {
    return guarded([&] {
        require(report_json != nullptr, "null output");
        const auto exponents = tuple(avec, n);
        if (exponents.size() < 2) fail(ErrorCode::ArityTooSmall, "a Jacobi sum needs at least two characters");
        if (!chars::admissible(exponents, d)) fail(ErrorCode::NotAdmissible, "exponent tuple is not admissible");
        const auto split = cyclo::make_splitting(d, p, splitting_options(), static_cast<int>(exponents.size()));
        const chars::RootsOfUnity mu(split->residue_field(), d, split->omega());
        const auto j = sums::jacobi_sum(mu, exponents);
        const auto valuations = weil::phi(j, *split);
        const auto check = weil::weight_consistency(j, *split, static_cast<int>(exponents.size()) - 1);
        nlohmann::ordered_json out;
        out["d"] = d;
        out["p"] = p;
        out["f"] = split->residue_field()->degree();
        out["avec"] = exponents;
        out["coset_reps"] = split->coset_reps();
        std::vector<std::string> values;
        for (const auto& v : valuations) values.push_back(v.get_str());
        out["valuations"] = values;
        out["weight_consistency"] = check.to_json();
        *report_json = duplicate(out.dump());
        if (passed) *passed = check.pass() ? 1 : 0;
    });
}

gjsum_status gjsum_report_stickelberger(int d, const char* hminus_table, char** report_json) {
    return guarded([&] {
        require(report_json != nullptr, "null output");
        const auto table = hminus_table ? stickelberger::HMinusTable::load(hminus_table)
                                        : stickelberger::HMinusTable::bundled();
        *report_json = duplicate(stickelberger::minus_index_report(d, table).to_json().dump());
    });
}

gjsum_status gjsum_report_weil(int d, uint64_t p, int arity_cap, char** report_json, int* passed) {
    return guarded([&] {
        require(report_json != nullptr, "null output");
        const auto options = splitting_options();
        const auto rank = weil::rank_report(d, p, options);
        const auto lattice = weil::relation_lattice(d, p, arity_cap, options);
        nlohmann::ordered_json out;
        out["rank"] = rank.to_json();
        out["relations"] = lattice.to_json();
        *report_json = duplicate(out.dump());
        if (passed) *passed = rank.pass() ? 1 : 0;
    });
}

gjsum_status gjsum_verify_config_new(gjsum_verify_config** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        auto handle = std::make_unique<gjsum_verify_config>();
        handle->config.field_options.cache_dir = default_field_options().cache_dir;
        *out = handle.release();
    });
}

void gjsum_verify_config_free(gjsum_verify_config* config) { delete config; }

gjsum_status gjsum_verify_config_set_suite(gjsum_verify_config* config, const char* suite) {
    return guarded([&] {
        require(config != nullptr && suite != nullptr, "null argument");
        const auto parsed = verify::parse_suite(suite);
        if (!parsed) fail(ErrorCode::InvalidArgument, std::string("unknown suite ") + suite);
        config->config.suite = *parsed;
    });
}

gjsum_status gjsum_verify_config_set_max_q(gjsum_verify_config* config, uint64_t max_q) {
    return guarded([&] {
        require(config != nullptr, "null config");
        config->config.max_q = max_q;
    });
}

gjsum_status gjsum_verify_config_set_p(gjsum_verify_config* config, uint64_t p) {
    return guarded([&] {
        require(config != nullptr, "null config");
        if (!nt::is_prime(p)) fail(ErrorCode::NotPrime, "p must be prime");
        config->config.p = p;
    });
}

gjsum_status gjsum_verify_config_set_f(gjsum_verify_config* config, int f) {
    return guarded([&] {
        require(config != nullptr, "null config");
        if (f < 1) fail(ErrorCode::DegreeOutOfRange, "f must be positive");
        config->config.f = f;
    });
}

gjsum_status gjsum_verify_config_set_d(gjsum_verify_config* config, int d) {
    return guarded([&] {
        require(config != nullptr, "null config");
        if (d < 1) fail(ErrorCode::BadDivisor, "d must be positive");
        config->config.d = d;
    });
}

gjsum_status gjsum_verify_config_add_only(gjsum_verify_config* config, const char* identity) {
    return guarded([&] {
        require(config != nullptr && identity != nullptr && *identity, "empty identity");
        config->config.only.emplace_back(identity);
    });
}

gjsum_status gjsum_verify_config_set_granularity(gjsum_verify_config* config, const char* granularity) {
    return guarded([&] {
        require(config != nullptr && granularity != nullptr, "null argument");
        const std::string_view name = granularity;
        if (name == "batch") {
            config->config.granularity = Granularity::Batch;
        } else if (name == "instance") {
            config->config.granularity = Granularity::Instance;
        } else {
            fail(ErrorCode::InvalidArgument, std::string("unknown granularity ") + granularity);
        }
    });
}

gjsum_status gjsum_verify_config_set_jobs(gjsum_verify_config* config, unsigned jobs) {
    return guarded([&] {
        require(config != nullptr, "null config");
        require(jobs >= 1, "jobs must be positive");
        config->config.jobs = jobs;
    });
}

gjsum_status gjsum_verify_config_set_max_arity(gjsum_verify_config* config, int max_arity) {
    return guarded([&] {
        require(config != nullptr, "null config");
        if (max_arity < 2) fail(ErrorCode::ArityTooSmall, "the arity cap must be at least 2");
        config->config.max_arity = max_arity;
    });
}

gjsum_status gjsum_verify_config_set_max_degree(gjsum_verify_config* config, int max_degree) {
    return guarded([&] {
        require(config != nullptr, "null config");
        require(max_degree >= 1, "the extension cap must be positive");
        config->config.max_degree = max_degree;
    });
}

gjsum_status gjsum_verify_config_set_max_order(gjsum_verify_config* config, uint64_t max_order) {
    return guarded([&] {
        require(config != nullptr, "null config");
        require(max_order >= 2, "the field order bound must be at least 2");
        config->config.field_options.max_order = max_order;
    });
}

gjsum_status gjsum_verify_config_set_max_cells(gjsum_verify_config* config, uint64_t max_cells) {
    return guarded([&] {
        require(config != nullptr, "null config");
        require(max_cells >= 1, "the cell budget must be positive");
        config->config.max_cells = max_cells;
    });
}

gjsum_status gjsum_verify_config_set_cache_dir(gjsum_verify_config* config, const char* cache_dir) {
    return guarded([&] {
        require(config != nullptr && cache_dir != nullptr, "null argument");
        config->config.field_options.cache_dir = cache_dir;
    });
}

gjsum_status gjsum_verify(const gjsum_verify_config* config, gjsum_line_sink sink, void* user, uint64_t* reports,
                          uint64_t* failed) {
    return guarded([&] {
        require(config != nullptr && sink != nullptr, "null argument");
        verify::VerifySummary summary;
        try {
            summary = verify::run_verify(config->config, [&](const CheckReport& report) {
                if (sink(report.to_json().dump().c_str(), user) != 0) throw SinkStopped{};
            });
        } catch (const SinkStopped&) {
            fail(ErrorCode::PreconditionFailed, "the line sink stopped delivery");
        }
        if (reports) *reports = summary.reports;
        if (failed) *failed = summary.failed;
    });
}

}  // extern "C"
