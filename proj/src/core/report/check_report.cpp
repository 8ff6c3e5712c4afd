#include "report/check_report.hpp"

namespace gjsum {

std::string_view outcome_name(Outcome outcome) noexcept {
    switch (outcome) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::SkippedTrivial: return "skipped_trivial";
        case Outcome::BudgetExceeded: return "budget_exceeded";
    }
    return "unknown";
}

nlohmann::ordered_json CheckReport::to_json() const {
    nlohmann::ordered_json out;
    out["identity"] = identity;
    out["params"] = params;
    out["pass"] = pass();
    out["outcome"] = outcome_name(outcome);
    out["lhs"] = lhs;
    out["rhs"] = rhs;
    out["instances"] = instances;
    if (!note.empty()) out["note"] = note;
    return out;
}

CheckReport compare_values(std::string identity, nlohmann::ordered_json params, const cyclo::CyclotomicNumber& lhs,
                           const cyclo::CyclotomicNumber& rhs) {
    CheckReport report;
    report.identity = std::move(identity);
    report.params = std::move(params);
    report.lhs = lhs.to_string();
    report.rhs = rhs.to_string();
    report.outcome = lhs == rhs ? Outcome::Pass : Outcome::Fail;
    return report;
}

}  // namespace gjsum
