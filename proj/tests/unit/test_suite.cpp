#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "relations/relations.hpp"
#include "relations/suite.hpp"
#include "sums/group_ring.hpp"
#include "util/error.hpp"

using namespace gjsum;
using namespace gjsum::relations;
using cyclo::CyclotomicNumber;

namespace {

std::vector<int> tuple_of(const nlohmann::ordered_json& value) {
    if (value.is_array()) return value.get<std::vector<int>>();
    return {value.get<int>()};
}

CheckReport recheck(const ff::FieldPtr& k, int d, const CheckReport& bulk) {
    const auto& p = bulk.params;
    const auto c = p.contains("c") ? p["c"].get<Elem>() : Elem{1};
    const auto& id = bulk.identity;
    if (id == "gauss_reflection") return check_gauss_reflection(k, d, c, p["a"].get<int>());
    if (id == "gauss_conjugate") return check_gauss_conjugate(k, d, c, p["a"].get<int>());
    if (id == "gauss_jacobi_quotient") return check_gauss_jacobi_quotient(k, d, c, tuple_of(p["a"]));
    if (id == "jacobi_reflection") return check_jacobi_reflection(k, d, tuple_of(p["a"]));
    if (id == "jacobi_induction") return check_jacobi_induction(k, d, tuple_of(p["a"]));
    if (id == "base_change_gauss" || id == "base_change_jacobi") {
        return check_base_change(k, d, c, tuple_of(p["a"]), p["r"].get<int>());
    }
    if (id == "multiplication_gauss") {
        return check_multiplication(k, d, p["n"].get<int>(), p["a"].get<int>(), MultiplicationForm::Gauss, c);
    }
    if (id == "multiplication_jacobi") {
        return check_multiplication(k, d, p["n"].get<int>(), p["a"].get<int>(), MultiplicationForm::Jacobi);
    }
    if (id == "eigen_gauss") return sums::eigen_check(k, d, c, p["a"].get<int>());
    if (id == "eigen_jacobi") return sums::eigen_check_jacobi(k, d, p["n"].get<int>(), c, tuple_of(p["a"]));
    ADD_FAILURE() << "unknown identity " << id;
    return bulk;
}

std::string batch_key(const CheckReport& r) {
    return r.identity + "/" + (r.params.contains("n") ? r.params["n"].dump() : "") + "/" +
           (r.params.contains("r") ? r.params["r"].dump() : "");
}

}  // namespace

TEST(Suite, InstancesAgreeWithStandaloneChecks) {
    for (auto [p, f, d] : {std::tuple{5, 1, 4}, std::tuple{7, 1, 6}, std::tuple{2, 3, 7}, std::tuple{3, 2, 8},
                           std::tuple{13, 1, 3}}) {
        auto k = ff::make_field(p, f);
        SuiteOptions options;
        options.max_arity = 3;
        options.max_degree = 2;
        options.granularity = Granularity::Instance;
        const auto reports = run_full_suite(k, d, options);
        ASSERT_FALSE(reports.empty());
        for (const auto& bulk : reports) {
            const auto single = recheck(k, d, bulk);
            ASSERT_EQ(bulk.outcome, single.outcome) << bulk.to_json().dump();
            if (bulk.outcome == Outcome::SkippedTrivial) continue;
            EXPECT_EQ(CyclotomicNumber::parse(bulk.lhs), CyclotomicNumber::parse(single.lhs)) << bulk.to_json().dump();
            EXPECT_EQ(CyclotomicNumber::parse(bulk.rhs), CyclotomicNumber::parse(single.rhs)) << bulk.to_json().dump();
        }
    }
}

TEST(Suite, BatchesSummarizeInstances) {
    auto k = ff::make_field(3, 2);
    SuiteOptions options;
    options.max_arity = 3;
    options.max_degree = 2;
    const auto batches = run_full_suite(k, 4, options);
    options.granularity = Granularity::Instance;
    const auto instances = run_full_suite(k, 4, options);

    std::map<std::string, std::uint64_t> counted;
    std::map<std::string, const CheckReport*> first;
    for (const auto& r : instances) {
        const auto key = batch_key(r);
        if (r.outcome == Outcome::SkippedTrivial) continue;
        ++counted[key];
        first.try_emplace(key, &r);
    }
    std::uint64_t total = 0;
    for (const auto& b : batches) {
        EXPECT_TRUE(b.pass()) << b.to_json().dump();
        const auto key = batch_key(b);
        total += b.instances;
        if (b.outcome == Outcome::SkippedTrivial) continue;
        EXPECT_EQ(b.instances, counted[key]) << key;
        ASSERT_TRUE(first.count(key)) << key;
        EXPECT_EQ(b.lhs, first[key]->lhs) << key;
        EXPECT_EQ(b.rhs, first[key]->rhs) << key;
        EXPECT_EQ(b.params["instance"]["a"], first[key]->params["a"]) << key;
    }
    std::uint64_t expected = 0;
    for (const auto& c : counted) expected += c.second;
    EXPECT_EQ(total, expected);
}

TEST(Suite, DeterministicOrder) {
    auto k = ff::make_field(7, 1);
    const auto a = run_full_suite(k, 6);
    const auto b = run_full_suite(k, 6);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].to_json(), b[i].to_json());
    EXPECT_EQ(a.front().identity, "gauss_reflection");
    EXPECT_EQ(a.back().identity, "eigen_jacobi");
}

TEST(Suite, MultiplicationSkipsAreReported) {
    auto k = ff::make_field(5, 1);
    const auto reports = run_full_suite(k, 4);
    bool saw_note = false;
    for (const auto& r : reports) {
        if (r.identity == "multiplication_jacobi" && r.params["n"] == 2) {
            EXPECT_EQ(r.instances, 2u);
            EXPECT_EQ(r.note, "2 instances skipped (a^n = 1)");
            EXPECT_EQ(r.outcome, Outcome::Pass);
            saw_note = true;
        }
    }
    EXPECT_TRUE(saw_note);
    const auto all_skipped = std::find_if(reports.begin(), reports.end(), [](const CheckReport& r) {
        return r.identity == "multiplication_jacobi" && r.params["n"] == 4;
    });
    ASSERT_NE(all_skipped, reports.end());
    EXPECT_EQ(all_skipped->outcome, Outcome::SkippedTrivial);
    EXPECT_EQ(all_skipped->instances, 0u);
}

TEST(Suite, RejectsBadCaps) {
    auto k = ff::make_field(5, 1);
    SuiteOptions options;
    options.max_arity = 1;
    EXPECT_THROW(run_full_suite(k, 4, options), Error);
    options.max_arity = 2;
    options.max_degree = 0;
    EXPECT_THROW(run_full_suite(k, 4, options), Error);
}
