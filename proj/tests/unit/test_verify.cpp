#include <gtest/gtest.h>

#include "verify/verify.hpp"

using namespace gjsum;
using namespace gjsum::verify;

namespace {

std::vector<std::string> lines(const VerifyConfig& config, VerifySummary* summary = nullptr) {
    std::vector<std::string> out;
    auto result = run_verify(config, [&](const CheckReport& report) { out.push_back(report.to_json().dump()); });
    if (summary) *summary = result;
    return out;
}

}  // namespace

TEST(Verify, SuiteNames) {
    EXPECT_EQ(parse_suite("weil"), Suite::Weil);
    EXPECT_EQ(parse_suite("all"), Suite::All);
    EXPECT_FALSE(parse_suite("everything").has_value());
    EXPECT_EQ(suite_name(Suite::Lefschetz), "lefschetz");
}

TEST(Verify, StickelbergerSingleCase) {
    VerifyConfig config;
    config.suite = Suite::Stickelberger;
    config.d = 3;
    config.p = 7;
    VerifySummary summary;
    const auto out = lines(config, &summary);
    EXPECT_TRUE(summary.pass());
    EXPECT_EQ(summary.reports, out.size());
    EXPECT_GT(out.size(), 3u);
}

TEST(Verify, OnlyFilterSelectsIdentityFamily) {
    VerifyConfig config;
    config.suite = Suite::Relations;
    config.p = 5;
    config.f = 1;
    config.d = 4;
    config.only = {"multiplication"};
    VerifySummary summary;
    const auto out = lines(config, &summary);
    EXPECT_TRUE(summary.pass());
    ASSERT_FALSE(out.empty());
    for (const auto& line : out) {
        const auto json = nlohmann::json::parse(line);
        EXPECT_TRUE(json["identity"].get<std::string>().starts_with("multiplication_")) << line;
    }
}

TEST(Verify, OutputIndependentOfJobs) {
    VerifyConfig config;
    config.suite = Suite::All;
    config.max_q = 5;
    config.d = 4;
    const auto serial = lines(config);
    config.jobs = 3;
    EXPECT_EQ(lines(config), serial);
    EXPECT_FALSE(serial.empty());
}

TEST(Verify, LefschetzGridPasses) {
    VerifyConfig config;
    config.suite = Suite::Lefschetz;
    config.jobs = 2;
    VerifySummary summary;
    const auto out = lines(config, &summary);
    EXPECT_TRUE(summary.pass());
    EXPECT_EQ(out.size(), summary.reports);
}
