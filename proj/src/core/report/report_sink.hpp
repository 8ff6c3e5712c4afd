#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "report/check_report.hpp"

namespace gjsum {

enum class Granularity { Batch, Instance };

// Collects instance outcomes into reports. Batch: one report per begin/end span with the
// instance count and the first failing instance (or the first instance when all pass).
// Instance: one report per recorded instance, its parameters merged into the span's.
class ReportSink {
public:
    using Describe = std::function<std::pair<std::string, std::string>()>;

    ReportSink(std::vector<CheckReport>& out, Granularity granularity) : out_(out), granularity_(granularity) {}

    void begin(std::string identity, nlohmann::ordered_json params);
    // describe() is called only when the instance is shown.
    void record(bool pass, const nlohmann::ordered_json& instance, const Describe& describe);
    void skip(const nlohmann::ordered_json& instance, const std::string& reason);
    void end();

private:
    nlohmann::ordered_json merged(const nlohmann::ordered_json& instance) const;

    std::vector<CheckReport>& out_;
    Granularity granularity_;
    CheckReport current_;
    bool shown_ = false;
    std::uint64_t skipped_ = 0;
    std::string skip_reason_;
};

}  // namespace gjsum
