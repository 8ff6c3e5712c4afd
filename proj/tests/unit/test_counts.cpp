#include <gtest/gtest.h>

#include <functional>

#include "counts/counts.hpp"
#include "util/error.hpp"

using namespace gjsum;
using namespace gjsum::counts;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

void expect_pass(const CheckReport& report) { EXPECT_TRUE(report.outcome == Outcome::Pass) << report.to_json().dump(); }

}  // namespace

TEST(Counts, PointCountExamples) {
    EXPECT_EQ(count_points(VarietySpec::artin_schreier(5, 1, 2), 1), 6u);
    EXPECT_EQ(count_points(VarietySpec::fermat(5, 1, 4, 2, 1), 1), 8u);
    for (auto [p, f] : {std::pair{2, 2}, std::pair{3, 1}, std::pair{7, 1}, std::pair{3, 2}}) {
        const std::uint64_t q = f == 1 ? p : static_cast<std::uint64_t>(p * p);
        EXPECT_EQ(count_points(VarietySpec::fermat(p, f, 1, 2, 1), 1), q + 1);
    }
}

TEST(Counts, BruteForceOracleValues) {
    // independent enumeration over prime fields
    EXPECT_EQ(count_points(VarietySpec::fermat(5, 1, 4, 2, 2), 1), 16u);
    EXPECT_EQ(count_points(VarietySpec::fermat(5, 1, 4, 2, 3), 1), 0u);
    EXPECT_EQ(count_points(VarietySpec::fermat(7, 1, 3, 2, 3), 1), 3u);
    EXPECT_EQ(count_points(VarietySpec::fermat(7, 1, 6, 2, 3), 1), 0u);
    EXPECT_EQ(count_points(VarietySpec::fermat(7, 1, 3, 3, 1), 1), 99u);
    EXPECT_EQ(count_points(VarietySpec::fermat(5, 1, 4, 3, 1), 1), 12u);
    EXPECT_EQ(count_points(VarietySpec::fermat(5, 1, 2, 3, 1), 1), 36u);
}

TEST(Counts, ParallelCountsAgree) {
    CountOptions wide;
    wide.jobs = 3;
    for (const auto& spec : {VarietySpec::artin_schreier(3, 2, 4), VarietySpec::fermat(3, 2, 8, 2, 2),
                             VarietySpec::fermat(7, 1, 3, 3, 1)}) {
        EXPECT_EQ(count_points(spec, 2, wide), count_points(spec, 2));
    }
}

TEST(Counts, Budget) {
    CountOptions tight;
    tight.max_cells = 1000;
    EXPECT_EQ(code_of([&] { count_points(VarietySpec::artin_schreier(5, 1, 4), 3, tight); }),
              ErrorCode::BudgetExceeded);
    EXPECT_EQ(lefschetz_check_fermat(7, 1, 3, 2, 1, 3, tight).outcome, Outcome::BudgetExceeded);
    EXPECT_EQ(code_of([&] { count_points(VarietySpec::artin_schreier(5, 1, 3), 1); }), ErrorCode::BadDivisor);
    EXPECT_EQ(code_of([&] { count_points(VarietySpec::fermat(5, 1, 4, 2, 0), 1); }), ErrorCode::ZeroArgument);
    EXPECT_EQ(code_of([&] { count_points(VarietySpec::fermat(5, 1, 4, 1, 1), 1); }), ErrorCode::ArityTooSmall);
}

TEST(Counts, CalibrationConstants) {
    EXPECT_EQ(artin_schreier_calibration().sign, -1);
    EXPECT_EQ(artin_schreier_calibration().instance["r"], 2);
    EXPECT_EQ(fermat_calibration().sign, -1);
    EXPECT_EQ(fermat_sign(2), -1);
    EXPECT_EQ(fermat_sign(3), 1);
}

TEST(Counts, LefschetzExamples) {
    auto as = lefschetz_check_artin_schreier(5, 1, 2, 1);
    expect_pass(as);
    EXPECT_EQ(as.params["eigenvalue_sum"], "0");
    EXPECT_EQ(as.params["eigenvalues"], 4);
    expect_pass(lefschetz_check_artin_schreier(5, 1, 4, 1));
    expect_pass(lefschetz_check_artin_schreier(5, 1, 2, 2));
    auto fermat = lefschetz_check_fermat(5, 1, 4, 2, 1, 1);
    expect_pass(fermat);
    EXPECT_EQ(fermat.lhs, "8");
    EXPECT_EQ(fermat.params["eigenvalue_sum"], "-2");
    EXPECT_EQ(fermat.params["eigenvalues"], 6);
    expect_pass(lefschetz_check_fermat(5, 1, 4, 2, 2, 1));
    expect_pass(lefschetz_check_fermat(7, 1, 3, 3, 1, 1));
}

TEST(Counts, EigenvalueCountIsTwiceGenus) {
    for (auto [p, f, d] : {std::tuple{3, 2, 8}, std::tuple{7, 1, 6}, std::tuple{2, 2, 3}}) {
        const int q = f == 1 ? p : p * p;
        auto report = lefschetz_check_artin_schreier(p, f, d, 1);
        EXPECT_EQ(report.params["eigenvalues"], (q - 1) * (d - 1));
    }
}
