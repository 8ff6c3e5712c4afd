#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>

#include "cyclo/cyclotomic.hpp"

namespace gjsum {

enum class Outcome { Pass, Fail, SkippedTrivial, BudgetExceeded };

std::string_view outcome_name(Outcome outcome) noexcept;

struct CheckReport {
    std::string identity;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::string lhs;
    std::string rhs;
    Outcome outcome = Outcome::Fail;
    std::uint64_t instances = 1;
    std::string note;

    bool pass() const noexcept { return outcome == Outcome::Pass || outcome == Outcome::SkippedTrivial; }
    nlohmann::ordered_json to_json() const;
};

CheckReport compare_values(std::string identity, nlohmann::ordered_json params, const cyclo::CyclotomicNumber& lhs,
                           const cyclo::CyclotomicNumber& rhs);

}  // namespace gjsum
