#include <gtest/gtest.h>

#include <functional>

#include "stickelberger/stickelberger.hpp"
#include "util/error.hpp"

using namespace gjsum;
using namespace gjsum::stickelberger;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

GroupRingQ element(int d, std::vector<std::pair<int, Rational>> terms) {
    GroupRingQ out(d);
    for (const auto& [h, c] : terms) out.add(h, c);
    return out;
}

Rational q(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

}  // namespace

TEST(Stickelberger, ThetaExamples) {
    EXPECT_EQ(theta(3, 1), element(3, {{1, q(2, 3)}, {2, q(1, 3)}}));
    EXPECT_EQ(theta(3, 0), GroupRingQ(3));
    EXPECT_EQ(theta(4, 1), element(4, {{1, q(3, 4)}, {3, q(1, 4)}}));
    EXPECT_EQ(code_of([] { theta(2, 1); }), ErrorCode::BadModulus);
    EXPECT_EQ(theta(3, 1).to_string(), "2/3*s1 + 1/3*s2");
}

TEST(Stickelberger, ThetaVecExamples) {
    const std::vector<int> ones = {1, 1}, twos = {2, 2}, bad = {1, 3};
    EXPECT_EQ(theta_vec(3, ones), GroupRingQ::sigma(3, 1));
    EXPECT_EQ(theta_vec(3, twos), GroupRingQ::sigma(3, 2));
    EXPECT_EQ(code_of([&] { theta_vec(4, bad); }), ErrorCode::NotAdmissible);
}

TEST(Stickelberger, ThetaTildeExamples) {
    EXPECT_EQ(theta_tilde(3, 1), element(3, {{1, q(1, 6)}, {2, q(-1, 6)}}));
    EXPECT_EQ(theta_tilde(3, 2), element(3, {{1, q(-1, 6)}, {2, q(1, 6)}}));
    EXPECT_TRUE(theta_tilde(5, 1).is_minus());
    EXPECT_EQ(code_of([] { theta_tilde(5, 0); }), ErrorCode::ZeroExponent);
}

TEST(Stickelberger, Distribution) {
    EXPECT_TRUE(check_distribution(4, 2, 1).pass());
    EXPECT_TRUE(check_distribution(6, 3, 1).pass());
    EXPECT_EQ(code_of([] { check_distribution(4, 2, 2); }), ErrorCode::PreconditionFailed);
    EXPECT_EQ(code_of([] { check_distribution(6, 4, 1); }), ErrorCode::BadDivisor);
}

TEST(Stickelberger, GroupAction) {
    for (int d : {5, 8, 12}) {
        const auto t = GroupRingQ::trace(d);
        for (int h : t.units()) {
            EXPECT_EQ(t.act(h), t);
            for (int a = 0; a < d; ++a) EXPECT_EQ(theta(d, a).act(h), theta(d, (h * a) % d));
        }
    }
}

// Valuation vectors at sigma_h v, h over the units, from an independent Teichmueller evaluation.
TEST(Stickelberger, FactorizationExamples) {
    struct Case {
        int d;
        std::uint64_t p;
        std::vector<int> a;
        std::vector<int> unit_valuations;
    };
    const std::vector<Case> cases = {
        {3, 7, {1, 1}, {1, 0}},        {3, 7, {2, 2}, {0, 1}},         {4, 5, {1, 1}, {1, 0}},
        {4, 5, {1, 2}, {1, 0}},        {4, 13, {1, 1}, {1, 0}},        {5, 11, {1, 1}, {1, 0, 1, 0}},
        {5, 11, {1, 2}, {1, 1, 0, 0}}, {6, 7, {1, 1}, {1, 0}},         {6, 13, {1, 4}, {1, 0}},
    };
    for (const auto& c : cases) {
        auto split = cyclo::make_splitting(c.d, c.p);
        const auto report = check_factorization(*split, c.a);
        EXPECT_TRUE(report.pass()) << report.to_json().dump();
        // f = 1 in every case, so the cosets are the units themselves
        ASSERT_EQ(split->f(), 1);
        const auto units = GroupRingQ(c.d).units();
        std::vector<int> by_coset(units.size());
        for (std::size_t i = 0; i < units.size(); ++i) by_coset[split->coset_index(units[i])] = c.unit_valuations[i];
        std::string expected = "[";
        for (std::size_t i = 0; i < by_coset.size(); ++i) expected += (i ? "," : "") + std::to_string(by_coset[i]);
        EXPECT_EQ(report.lhs, expected + "]") << c.d << " " << c.p;
    }
    auto split = cyclo::make_splitting(6, 7);
    const std::vector<int> triple = {1, 1, 1};
    EXPECT_TRUE(check_factorization(*split, triple).pass());
    auto split3 = cyclo::make_splitting(3, 7);
    EXPECT_EQ(code_of([&] { check_factorization(*split3, triple); }), ErrorCode::NotAdmissible);
}

TEST(Stickelberger, FactorizationSuiteSmallGrid) {
    for (int d : {3, 4, 5, 7, 8, 12}) {
        for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 29u}) {
            if (d % p == 0) continue;
            for (const auto& r : factorization_suite(d, p, 3)) EXPECT_TRUE(r.pass()) << r.to_json().dump();
        }
    }
}

TEST(Stickelberger, FactorizationSuiteBudget) {
    ff::FieldOptions small;
    small.max_order = 1000;
    const auto reports = factorization_suite(7, 31, 3, small);
    ASSERT_EQ(reports.size(), 2u);
    for (const auto& r : reports) {
        EXPECT_EQ(r.outcome, Outcome::BudgetExceeded);
        EXPECT_FALSE(r.pass());
    }
}

TEST(Stickelberger, IdealLattice) {
    EXPECT_EQ(ideal_lattice(3), lattice::Matrix::identity(2));
    // the plus part of every generator is T/2, so the rank is phi(d)/2 + 1
    EXPECT_EQ(lattice::rank(ideal_lattice(5)), 3u);
    for (int d : {7, 8, 12, 15}) EXPECT_EQ(lattice::rank(ideal_lattice(d)), GroupRingQ(d).units().size() / 2 + 1) << d;
    const auto basis4 = ideal_lattice(4);
    const std::vector<int> ones = {1, 1};
    EXPECT_TRUE(lattice::contains(basis4, theta_vec(4, ones).integer_coefficients()));
}

TEST(Stickelberger, IndexReports) {
    const auto r3 = minus_index_report(3);
    EXPECT_TRUE(r3.finite());
    EXPECT_EQ(r3.literal_index, Integer(1));
    EXPECT_EQ(r3.formula_r, Integer(2));
    EXPECT_TRUE(r3.ambiguity);
    const auto j = r3.to_json();
    EXPECT_EQ(j["computed_index"], 1);
    EXPECT_EQ(j["formula_2r_hminus"], 2);
    EXPECT_EQ(j["normalization_ambiguity"], true);
    EXPECT_TRUE(minus_index_report(4).finite());
    const auto r5 = minus_index_report(5);
    EXPECT_EQ(r5.literal_rank, 2u);
    EXPECT_TRUE(r5.finite());
}

TEST(Stickelberger, HMinusTable) {
    const auto table = HMinusTable::bundled();
    EXPECT_EQ(table.lookup(23), Integer(3));
    EXPECT_EQ(table.lookup(29), Integer(8));
    EXPECT_EQ(table.lookup(7), Integer(1));
    EXPECT_FALSE(table.lookup(31).has_value());
    EXPECT_EQ(code_of([] { HMinusTable::load("/nonexistent/table.tsv"); }), ErrorCode::Io);
}

TEST(Stickelberger, MinusBasisExamples) {
    for (int d : {3, 5, 8}) EXPECT_TRUE(check_minus_basis(d).pass()) << d;
    EXPECT_EQ(check_minus_basis(8).params["a"], nlohmann::ordered_json({1, 3}));
    // an Euler factor vanishes for the odd quadratic character mod 7 at 2
    const auto r14 = check_minus_basis(14);
    EXPECT_FALSE(r14.pass());
    EXPECT_EQ(r14.lhs, "2");
}

TEST(Stickelberger, ThetaIdentitiesUpTo30) {
    for (int d = 3; d <= 30; ++d) {
        for (const auto& r : theta_identities(d)) EXPECT_TRUE(r.pass()) << r.to_json().dump();
    }
}
