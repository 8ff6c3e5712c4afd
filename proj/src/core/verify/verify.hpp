#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ff/finite_field.hpp"
#include "report/check_report.hpp"
#include "report/report_sink.hpp"

namespace gjsum::verify {

enum class Suite { Relations, Stickelberger, Weil, Lefschetz, All };

std::optional<Suite> parse_suite(std::string_view name);
std::string_view suite_name(Suite suite) noexcept;

struct VerifyConfig {
    Suite suite = Suite::All;
    // Largest base field for the relations and Lefschetz grids.
    std::uint64_t max_q = 27;
    // Grid filters.
    std::optional<std::uint64_t> p;
    std::optional<int> f;
    std::optional<int> d;
    // Identity filter: a report is kept when its identity equals an entry or starts with entry + "_".
    std::vector<std::string> only;
    Granularity granularity = Granularity::Batch;
    int max_arity = 4;
    int max_degree = 3;
    unsigned jobs = 1;
    std::uint64_t max_cells = 100'000'000;
    ff::FieldOptions field_options = {std::uint64_t{1} << 26, {}};
};

struct VerifySummary {
    std::uint64_t reports = 0;
    std::uint64_t failed = 0;
    bool pass() const noexcept { return failed == 0; }
};

// Runs the selected grid; reports reach `emit` in a fixed order that does not depend on jobs.
// Units run on up to config.jobs threads. An unexpected error inside a unit becomes a failed report.
VerifySummary run_verify(const VerifyConfig& config, const std::function<void(const CheckReport&)>& emit);

// Base field sizes of the relation grid.
const std::vector<std::uint64_t>& relation_field_orders();

}  // namespace gjsum::verify
