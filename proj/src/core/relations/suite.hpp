#pragma once

#include <vector>

#include "ff/finite_field.hpp"
#include "report/check_report.hpp"
#include "report/report_sink.hpp"

namespace gjsum::relations {

struct SuiteOptions {
    int max_arity = 4;
    int max_degree = 3;
    // Batch: one report per identity and (n, r), carrying the instance count and the first
    // failing instance (or the first instance when all pass). Instance: one report each.
    Granularity granularity = Granularity::Batch;
    ff::FieldOptions field_options;
};

// Every identity over every character parameter of the field at level d, in a fixed order.
// A failed identity is a report with pass = false, never an exception.
std::vector<CheckReport> run_full_suite(const ff::FieldPtr& field, int d, const SuiteOptions& options = {});

}  // namespace gjsum::relations
