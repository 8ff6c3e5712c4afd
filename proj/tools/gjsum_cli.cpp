#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gjsum/gjsum.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

using Json = nlohmann::ordered_json;

struct OwnedString {
    char* text = nullptr;
    ~OwnedString() { gjsum_string_free(text); }
    std::string str() const { return text ? text : ""; }
};

struct FieldCloser {
    void operator()(gjsum_field* field) const { gjsum_field_close(field); }
};

struct ConfigFreer {
    void operator()(gjsum_verify_config* config) const { gjsum_verify_config_free(config); }
};

// Library failure: reported on stderr and mapped to the usage/configuration exit code.
struct LibraryError {
    gjsum_status status;
};

void check(gjsum_status status) {
    if (status != GJSUM_OK) throw LibraryError{status};
}

std::vector<int> parse_tuple(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--avec", "expected comma-separated integers");
        }
        if (used != item.size()) throw CLI::ValidationError("--avec", "expected comma-separated integers");
        out.push_back(value);
    }
    if (out.empty()) throw CLI::ValidationError("--avec", "empty exponent vector");
    return out;
}

const char* optional_c_str(const std::optional<std::string>& text) { return text ? text->c_str() : nullptr; }

std::unique_ptr<gjsum_field, FieldCloser> open_field(std::uint64_t p, int f, const std::optional<std::string>& cache) {
    gjsum_field* field = nullptr;
    check(gjsum_field_open(p, f, 0, optional_c_str(cache), &field));
    return std::unique_ptr<gjsum_field, FieldCloser>(field);
}

void print_json(const Json& out) { std::cout << out.dump() << '\n'; }

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

std::string csv_row(const Json& report) {
    std::string row;
    row += csv_field(report["identity"].get<std::string>()) + ',';
    row += csv_field(report["outcome"].get<std::string>()) + ',';
    row += std::string(report["pass"].get<bool>() ? "true" : "false") + ',';
    row += std::to_string(report["instances"].get<std::uint64_t>()) + ',';
    row += csv_field(report["params"].dump()) + ',';
    row += csv_field(report["lhs"].get<std::string>()) + ',';
    row += csv_field(report["rhs"].get<std::string>()) + ',';
    row += csv_field(report.contains("note") ? report["note"].get<std::string>() : "");
    return row;
}

struct VerifyOutput {
    std::ostream* out;
    std::string format;
    bool first = true;

    void line(const char* text) {
        if (format == "jsonl") {
            *out << text << '\n';
        } else if (format == "json") {
            *out << (first ? "[\n" : ",\n") << text;
        } else {
            *out << csv_row(Json::parse(text)) << '\n';
        }
        first = false;
    }
    void begin() {
        if (format == "csv") *out << "identity,outcome,pass,instances,params,lhs,rhs,note\n";
    }
    void end() {
        if (format == "json") *out << (first ? "[]\n" : "\n]\n");
        out->flush();
    }
};

int sink(const char* line, void* user) {
    auto* output = static_cast<VerifyOutput*>(user);
    output->line(line);
    return output->out->good() ? 0 : 1;
}

struct VarietyArgs {
    std::string kind = "artin-schreier";
    std::uint64_t p = 0;
    int f = 1;
    int d = 1;
    int n = 2;
    std::uint32_t c = 1;
    int r = 1;
    std::uint64_t max_cells = 0;
    unsigned jobs = 1;

    gjsum_variety variety() const {
        gjsum_variety out{};
        out.kind = kind == "fermat" ? GJSUM_FERMAT : GJSUM_ARTIN_SCHREIER;
        out.p = p;
        out.f = f;
        out.d = d;
        out.n = n;
        out.c = c;
        return out;
    }
};

void add_variety_options(CLI::App* command, VarietyArgs& args) {
    command->add_option("--kind", args.kind, "artin-schreier or fermat")
        ->check(CLI::IsMember({"artin-schreier", "fermat"}));
    command->add_option("--p", args.p, "characteristic")->required();
    command->add_option("--f", args.f, "base field degree");
    command->add_option("--d", args.d, "exponent d, a divisor of q - 1")->required();
    command->add_option("--n", args.n, "number of affine variables (Fermat)");
    command->add_option("--c", args.c, "right-hand coefficient, base field encoding (Fermat)");
    command->add_option("--r", args.r, "extension degree of the counting field");
    command->add_option("--max-cells", args.max_cells, "enumeration budget");
    command->add_option("--jobs", args.jobs, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Gauss and Jacobi sums over finite fields, with identity checks"};
    app.require_subcommand(1);
    std::optional<std::string> cache_dir;

    std::uint64_t p = 0;
    int f = 1;
    int d = 0;
    std::int64_t a = 0;
    std::uint32_t psi_c = 1;
    std::string avec_text;

    auto* gauss = app.add_subcommand("gauss", "Gauss sum g(psi_c, chi_a) and its Weil weight");
    gauss->add_option("--p", p)->required();
    gauss->add_option("--f", f);
    gauss->add_option("--d", d)->required();
    gauss->add_option("--a", a)->required();
    gauss->add_option("--psi-c", psi_c, "additive character twist, field encoding");
    gauss->add_option("--cache-dir", cache_dir);

    auto* jacobi = app.add_subcommand("jacobi", "Jacobi sum j(chi_a1, ..., chi_an) and its Weil weight");
    jacobi->add_option("--p", p)->required();
    jacobi->add_option("--f", f);
    jacobi->add_option("--d", d)->required();
    jacobi->add_option("--avec", avec_text, "comma-separated exponents")->required();
    jacobi->add_option("--cache-dir", cache_dir);

    VarietyArgs variety;
    auto* count = app.add_subcommand("count", "Rational points of an Artin-Schreier curve or Fermat hypersurface");
    add_variety_options(count, variety);
    auto* lefschetz = app.add_subcommand("lefschetz", "Point count against the Gauss or Jacobi sum eigenvalues");
    add_variety_options(lefschetz, variety);

    std::string suite = "all";
    std::uint64_t max_q = 27;
    std::optional<std::uint64_t> grid_p;
    std::optional<int> grid_f;
    std::optional<int> grid_d;
    std::vector<std::string> only;
    std::string granularity = "batch";
    unsigned jobs = 1;
    std::string format = "jsonl";
    std::optional<int> max_arity;
    std::optional<int> max_degree;
    std::optional<std::uint64_t> max_order;
    std::optional<std::uint64_t> max_cells;
    std::optional<std::string> output_path;
    auto* verify = app.add_subcommand("verify", "Run identity suites; exit 0 when every report passes");
    verify->add_option("--suite", suite)->check(CLI::IsMember({"relations", "stickelberger", "weil", "lefschetz", "all"}));
    verify->add_option("--max-q", max_q, "largest base field in the relations and Lefschetz grids");
    verify->add_option("--p", grid_p);
    verify->add_option("--f", grid_f);
    verify->add_option("--d", grid_d);
    verify->add_option("--only", only, "identity names or families")->delimiter(',');
    verify->add_option("--granularity", granularity)->check(CLI::IsMember({"batch", "instance"}));
    verify->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    verify->add_option("--format", format)->check(CLI::IsMember({"jsonl", "json", "csv"}));
    verify->add_option("--max-arity", max_arity);
    verify->add_option("--max-degree", max_degree);
    verify->add_option("--max-order", max_order, "largest residue or extension field");
    verify->add_option("--max-cells", max_cells, "point-count enumeration budget");
    verify->add_option("--output", output_path);
    verify->add_option("--cache-dir", cache_dir);

    auto* report = app.add_subcommand("report", "Structural reports");
    report->require_subcommand(1);
    std::optional<std::string> hminus_table;
    auto* report_stickelberger = report->add_subcommand("stickelberger", "Minus-part index of the Stickelberger ideal");
    report_stickelberger->add_option("--d", d)->required();
    report_stickelberger->add_option("--hminus-table", hminus_table, "tab-separated d, h^- table");
    int arity_cap = 2;
    auto* report_weil = report->add_subcommand("weil", "Rank of the valuation lattice and its relation kernel");
    report_weil->add_option("--d", d)->required();
    report_weil->add_option("--p", p)->required();
    report_weil->add_option("--arity-cap", arity_cap);

    auto* stickelberger = app.add_subcommand("stickelberger", "Valuations of j_d(avec) against the Stickelberger element");
    stickelberger->add_option("--d", d)->required();
    stickelberger->add_option("--p", p)->required();
    stickelberger->add_option("--avec", avec_text)->required();

    auto* weil = app.add_subcommand("weil", "Valuation vector of j_d(avec) at the primes above p");
    weil->add_option("--d", d)->required();
    weil->add_option("--p", p)->required();
    weil->add_option("--avec", avec_text)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gauss) {
            auto field = open_field(p, f, cache_dir);
            OwnedString value;
            int weight = -1;
            check(gjsum_gauss_sum(field.get(), d, a, psi_c, &value.text, &weight));
            print_json({{"p", p}, {"f", f}, {"d", d}, {"a", a}, {"psi_c", psi_c}, {"value", value.str()},
                        {"weight", weight < 0 ? Json(nullptr) : Json(weight)}});
            return kExitPass;
        }
        if (*jacobi) {
            const auto avec = parse_tuple(avec_text);
            auto field = open_field(p, f, cache_dir);
            OwnedString value;
            int weight = -1;
            check(gjsum_jacobi_sum(field.get(), d, avec.data(), avec.size(), &value.text, &weight));
            print_json({{"p", p}, {"f", f}, {"d", d}, {"avec", avec}, {"value", value.str()},
                        {"weight", weight < 0 ? Json(nullptr) : Json(weight)}});
            return kExitPass;
        }
        if (*count) {
            const auto spec = variety.variety();
            std::uint64_t points = 0;
            check(gjsum_count_points(&spec, variety.r, variety.max_cells, variety.jobs, &points));
            Json out = {{"kind", variety.kind}, {"p", variety.p}, {"f", variety.f}, {"d", variety.d}};
            if (spec.kind == GJSUM_FERMAT) {
                out["n"] = variety.n;
                out["c"] = variety.c;
            }
            out["r"] = variety.r;
            out["points"] = points;
            print_json(out);
            return kExitPass;
        }
        if (*lefschetz) {
            const auto spec = variety.variety();
            OwnedString json;
            int passed = 0;
            check(gjsum_lefschetz(&spec, variety.r, variety.max_cells, variety.jobs, &json.text, &passed));
            std::cout << json.str() << '\n';
            return passed ? kExitPass : kExitFail;
        }
        if (*verify) {
            gjsum_verify_config* raw = nullptr;
            check(gjsum_verify_config_new(&raw));
            std::unique_ptr<gjsum_verify_config, ConfigFreer> config(raw);
            check(gjsum_verify_config_set_suite(raw, suite.c_str()));
            check(gjsum_verify_config_set_max_q(raw, max_q));
            if (grid_p) check(gjsum_verify_config_set_p(raw, *grid_p));
            if (grid_f) check(gjsum_verify_config_set_f(raw, *grid_f));
            if (grid_d) check(gjsum_verify_config_set_d(raw, *grid_d));
            for (const auto& name : only) check(gjsum_verify_config_add_only(raw, name.c_str()));
            check(gjsum_verify_config_set_granularity(raw, granularity.c_str()));
            check(gjsum_verify_config_set_jobs(raw, jobs));
            if (max_arity) check(gjsum_verify_config_set_max_arity(raw, *max_arity));
            if (max_degree) check(gjsum_verify_config_set_max_degree(raw, *max_degree));
            if (max_order) check(gjsum_verify_config_set_max_order(raw, *max_order));
            if (max_cells) check(gjsum_verify_config_set_max_cells(raw, *max_cells));
            if (cache_dir) check(gjsum_verify_config_set_cache_dir(raw, cache_dir->c_str()));

            std::ofstream file;
            if (output_path) {
                file.open(*output_path, std::ios::binary);
                if (!file) {
                    std::cerr << "cannot open " << *output_path << '\n';
                    return kExitUsage;
                }
            }
            VerifyOutput output{output_path ? static_cast<std::ostream*>(&file) : &std::cout, format};
            output.begin();
            std::uint64_t reports = 0;
            std::uint64_t failed = 0;
            check(gjsum_verify(raw, sink, &output, &reports, &failed));
            output.end();
            std::cerr << reports << " reports, " << failed << " failed\n";
            return failed == 0 ? kExitPass : kExitFail;
        }
        if (*report_stickelberger) {
            OwnedString json;
            check(gjsum_report_stickelberger(d, optional_c_str(hminus_table), &json.text));
            std::cout << json.str() << '\n';
            return kExitPass;
        }
        if (*report_weil) {
            OwnedString json;
            int passed = 0;
            check(gjsum_report_weil(d, p, arity_cap, &json.text, &passed));
            std::cout << json.str() << '\n';
            return passed ? kExitPass : kExitFail;
        }
        if (*stickelberger || *weil) {
            const auto avec = parse_tuple(avec_text);
            OwnedString json;
            int passed = 0;
            check(*stickelberger ? gjsum_stickelberger_check(d, p, avec.data(), avec.size(), &json.text, &passed)
                                 : gjsum_weil_valuations(d, p, avec.data(), avec.size(), &json.text, &passed));
            std::cout << json.str() << '\n';
            return passed ? kExitPass : kExitFail;
        }
    } catch (const LibraryError& e) {
        std::cerr << "error: " << gjsum_last_error_message() << " [" << gjsum_status_name(e.status) << "]\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
