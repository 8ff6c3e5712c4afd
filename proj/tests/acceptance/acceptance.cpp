#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "counts/counts.hpp"
#include "relations/suite.hpp"
#include "stickelberger/stickelberger.hpp"
#include "util/numtheory.hpp"
#include "verify/verify.hpp"
#include "weil/weil.hpp"

namespace {

using namespace gjsum;

constexpr std::uint64_t kLargeFields = std::uint64_t{1} << 26;
constexpr std::size_t kShownFailures = 12;

struct Tally {
    std::uint64_t reports = 0;
    std::uint64_t instances = 0;
    std::uint64_t failed = 0;
    std::uint64_t budget = 0;
    std::vector<std::string> failures;

    void add(const CheckReport& report) {
        ++reports;
        instances += report.instances;
        if (report.pass()) return;
        ++failed;
        if (report.outcome == Outcome::BudgetExceeded) ++budget;
        if (failures.size() < kShownFailures) failures.push_back(report.to_json().dump());
    }
    void add(const std::vector<CheckReport>& reports) {
        for (const auto& r : reports) add(r);
    }
    std::string summary() const {
        std::ostringstream out;
        out << reports << " reports, " << instances << " instances, " << failed << " failed";
        if (budget) out << " (" << budget << " over the field budget)";
        return out.str();
    }
    void print_failures() const {
        for (const auto& line : failures) std::cout << "  failing: " << line << '\n';
        if (failed > failures.size()) std::cout << "  ... " << failed - failures.size() << " more\n";
    }
};

ff::FieldOptions large_fields() { return {kLargeFields, {}}; }

std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n < bound; ++n) {
        if (nt::is_prime(n)) out.push_back(n);
    }
    return out;
}

bool finish(Tally& tally, std::string extra = {}) {
    std::cout << "  " << tally.summary() << (extra.empty() ? "" : "; " + extra) << '\n';
    tally.print_failures();
    return tally.failed == 0;
}

bool relation_suite() {
    Tally tally;
    relations::SuiteOptions options;
    options.max_arity = 4;
    options.max_degree = 3;
    options.field_options = large_fields();
    for (auto q : verify::relation_field_orders()) {
        const auto [p, f] = nt::factorize(q).front();
        auto field = ff::make_field(p, f, options.field_options);
        for (auto d : nt::divisors(q - 1)) tally.add(relations::run_full_suite(field, static_cast<int>(d), options));
    }
    return finish(tally);
}

bool stickelberger_factorization() {
    Tally tally;
    for (int d = 3; d <= 12; ++d) {
        for (auto p : primes_below(101)) {
            if (d % static_cast<int>(p) == 0) continue;
            tally.add(stickelberger::factorization_suite(d, p, 3, large_fields()));
        }
    }
    return finish(tally);
}

bool lefschetz() {
    Tally tally;
    verify::VerifyConfig config;
    config.suite = verify::Suite::Lefschetz;
    verify::run_verify(config, [&](const CheckReport& report) { tally.add(report); });
    std::ostringstream signs;
    signs << "calibrated signs: Artin-Schreier " << counts::artin_schreier_calibration().sign << " on "
          << counts::artin_schreier_calibration().instance.dump() << ", Fermat n=2 " << counts::fermat_sign(2)
          << " on " << counts::fermat_calibration().instance.dump() << ", Fermat n=3 " << counts::fermat_sign(3);
    return finish(tally, signs.str());
}

bool theta_identities() {
    Tally tally;
    for (int d = 3; d <= 30; ++d) {
        tally.add(stickelberger::theta_identities(d));
        tally.add(stickelberger::check_minus_basis(d));
    }
    return finish(tally);
}

const int kWeilLevels[] = {3, 4, 5, 7, 8, 9, 12};

bool weil_ranks() {
    Tally tally;
    for (int d : kWeilLevels) {
        for (auto p : primes_below(50)) {
            if (d % static_cast<int>(p) == 0) continue;
            const auto rank = weil::rank_report(d, p, large_fields());
            auto check = rank.to_check();
            check.params = rank.to_json();
            tally.add(check);
        }
    }
    return finish(tally);
}

bool kernel_torsion() {
    Tally tally;
    for (int d : kWeilLevels) {
        for (auto p : primes_below(50)) {
            if (d % static_cast<int>(p) == 0) continue;
            tally.add(weil::relation_lattice(d, p, 2, large_fields()).torsion_check());
        }
    }
    return finish(tally);
}

bool index_report() {
    Tally tally;
    const auto& table = stickelberger::HMinusTable::bundled();
    bool ok = true;
    for (int d = 3; d <= 20; ++d) {
        const auto report = stickelberger::minus_index_report(d, table);
        const auto json = report.to_json();
        CheckReport check;
        check.identity = "index_report";
        check.params = json;
        check.outcome = json["finite"].get<bool>() ? Outcome::Pass : Outcome::Fail;
        tally.add(check);
        if (d == 3) {
            const bool content = json["computed_index"] == 1 && json["formula_2r_hminus"] == 2 &&
                                 json["normalization_ambiguity"] == true && json.contains("note");
            std::cout << "  d=3: " << json.dump() << '\n';
            if (!content) {
                std::cout << "  d=3 report lacks computed_index 1, formula value 2 or the ambiguity flag\n";
                ok = false;
            }
        }
    }
    return finish(tally) && ok;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const std::string& args, const std::filesystem::path& out) {
    const std::string command = std::string(GJSUM_CLI_PATH) + " " + args + " --output " + out.string() + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool determinism() {
    const auto dir = std::filesystem::temp_directory_path() / ("gjsum-determinism-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto first = dir / "jobs1.jsonl";
    const auto second = dir / "jobs3.jsonl";
    const int code1 = run_cli("verify --suite all --jobs 1", first);
    const int code3 = run_cli("verify --suite all --jobs 3", second);
    const auto a = read_file(first);
    const auto b = read_file(second);
    std::filesystem::remove_all(dir);
    const auto lines = std::count(a.begin(), a.end(), '\n');
    std::cout << "  --jobs 1 exit " << code1 << ", --jobs 3 exit " << code3 << ", " << a.size() << " vs " << b.size()
              << " bytes, " << lines << " lines\n";
    const bool ran = (code1 == 0 || code1 == 1) && (code3 == 0 || code3 == 1);
    if (!ran) std::cout << "  the verify run did not complete\n";
    if (a != b) std::cout << "  outputs differ\n";
    return ran && a == b && !a.empty() && code1 == code3;
}

struct Criterion {
    int number;
    const char* title;
    std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "relation suite", relation_suite},
        {2, "Stickelberger factorization", stickelberger_factorization},
        {3, "Lefschetz point counts", lefschetz},
        {4, "theta identities and minus basis", theta_identities},
        {5, "Weil lattice ranks", weil_ranks},
        {6, "kernel torsion", kernel_torsion},
        {7, "Stickelberger index report", index_report},
        {8, "verify determinism", determinism},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    bool all_pass = true;
    for (const auto& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.number) == selected.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        bool pass = false;
        try {
            pass = c.run();
        } catch (const std::exception& e) {
            std::cout << "  error: " << e.what() << '\n';
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d %s: %s (%.1f s)\n", c.number, c.title, pass ? "PASS" : "FAIL", seconds);
        std::fflush(stdout);
        all_pass = all_pass && pass;
    }
    return all_pass ? 0 : 1;
}
