#include "report/report_sink.hpp"

namespace gjsum {

using Json = nlohmann::ordered_json;

void ReportSink::begin(std::string identity, Json params) {
    current_ = CheckReport{};
    current_.identity = std::move(identity);
    current_.params = std::move(params);
    current_.instances = 0;
    current_.outcome = Outcome::Pass;
    shown_ = false;
    skipped_ = 0;
    skip_reason_.clear();
}

void ReportSink::record(bool pass, const Json& instance, const Describe& describe) {
    if (granularity_ == Granularity::Instance) {
        CheckReport report;
        report.identity = current_.identity;
        report.params = merged(instance);
        std::tie(report.lhs, report.rhs) = describe();
        report.outcome = pass ? Outcome::Pass : Outcome::Fail;
        out_.push_back(std::move(report));
        return;
    }
    ++current_.instances;
    const bool first_failure = !pass && current_.outcome == Outcome::Pass;
    if (!shown_ || first_failure) {
        std::tie(current_.lhs, current_.rhs) = describe();
        current_.params["instance"] = instance;
        shown_ = true;
    }
    if (!pass) current_.outcome = Outcome::Fail;
}

void ReportSink::skip(const Json& instance, const std::string& reason) {
    if (granularity_ == Granularity::Instance) {
        CheckReport report;
        report.identity = current_.identity;
        report.params = merged(instance);
        report.outcome = Outcome::SkippedTrivial;
        report.note = reason;
        out_.push_back(std::move(report));
        return;
    }
    ++skipped_;
    skip_reason_ = reason;
}

void ReportSink::end() {
    if (granularity_ == Granularity::Instance) return;
    if (current_.instances == 0 && skipped_ == 0) return;
    if (skipped_ > 0) {
        current_.note = std::to_string(skipped_) + (skipped_ == 1 ? " instance" : " instances") + " skipped (" + skip_reason_ + ")";
        if (current_.instances == 0) current_.outcome = Outcome::SkippedTrivial;
    }
    out_.push_back(std::move(current_));
}

Json ReportSink::merged(const Json& instance) const {
    Json params = current_.params;
    for (auto it = instance.begin(); it != instance.end(); ++it) params[it.key()] = it.value();
    return params;
}

}  // namespace gjsum
