#include <gtest/gtest.h>

#include <functional>

#include "sums/group_ring.hpp"
#include "sums/jacobi_table.hpp"
#include "sums/sums.hpp"
#include "util/error.hpp"
#include "util/numtheory.hpp"

using namespace gjsum;
using namespace gjsum::sums;
using chars::additive_character;
using chars::multiplicative_character;
using chars::MultiplicativeCharacter;
using cyclo::CyclotomicNumber;
using ff::Elem;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

CyclotomicNumber number(int n, std::vector<long> coeffs) {
    std::vector<cyclo::Integer> nums(coeffs.begin(), coeffs.end());
    nums.resize(static_cast<std::size_t>(cyclo::context(n).degree()), 0);
    return CyclotomicNumber::from_numerators(n, nums);
}

CyclotomicNumber integer(int n, long v) { return CyclotomicNumber::from_integer(n, v); }

CyclotomicNumber jacobi(const ff::FieldPtr& k, int d, std::vector<int> avec) {
    return jacobi_sum(chars::RootsOfUnity(k, d), avec);
}

CyclotomicNumber gauss(const ff::FieldPtr& k, int d, int a, Elem c) {
    return gauss_sum(additive_character(k, c), multiplicative_character(k, d, a));
}

// Fields with q <= 27 used for exhaustive properties.
const std::vector<std::pair<int, int>> kSmallFields = {{2, 2}, {3, 1}, {2, 3}, {5, 1}, {7, 1}, {3, 2}, {13, 1}};

std::vector<int> divisors_of(std::uint64_t n) {
    std::vector<int> out;
    for (auto v : nt::divisors(n)) out.push_back(static_cast<int>(v));
    return out;
}

}  // namespace

TEST(GaussSum, Examples) {
    auto k5 = ff::make_field(5, 1);
    EXPECT_TRUE(gauss(k5, 4, 0, 1).is_one());
    const auto quad = gauss(k5, 2, 1, 1);
    EXPECT_EQ(quad * quad, integer(10, 5));
    EXPECT_EQ(quad, number(10, {-1, 0, -2, 2}));

    auto k7 = ff::make_field(7, 1);
    const auto g = gauss(k7, 3, 1, 1);
    EXPECT_EQ(g, number(21, {-2, 1, 2, -3, 2, 2, -1, -1, 1, 0, -1, 3}));
    EXPECT_EQ(g * gauss(k7, 3, 2, 6), integer(21, 7));

    EXPECT_EQ(code_of([&] { gauss(k5, 4, 1, 0); }), ErrorCode::TrivialAdditive);
}

TEST(GaussSum, ExtensionFieldValuesMatchIndependentComputation) {
    auto k9 = ff::make_field(3, 2);
    EXPECT_EQ(gauss(k9, 8, 1, 1), number(24, {-1, -1, 0, -1, 2, -1, 0, 2}));
    EXPECT_EQ(gauss(k9, 4, 3, 5), number(12, {0, 0, 0, -3}));
    auto k8 = ff::make_field(2, 3);
    EXPECT_EQ(gauss(k8, 7, 1, 1), number(14, {2, -2, 2, 0, 2}));
}

TEST(JacobiSum, Examples) {
    auto k5 = ff::make_field(5, 1);
    EXPECT_EQ(jacobi(k5, 4, {0, 0}), integer(4, -3));
    EXPECT_EQ(jacobi(k5, 4, {1, 3}), integer(4, -1));
    const auto j = jacobi(k5, 4, {1, 1});
    EXPECT_EQ(j, number(4, {1, 2}));
    EXPECT_EQ(j * j.galois(-1), integer(4, 5));
    EXPECT_EQ(jacobi(k5, 4, {1, 1, 1}), number(4, {3, -4}));

    auto k7 = ff::make_field(7, 1);
    EXPECT_EQ(jacobi(k7, 3, {1, 1}), number(3, {1, 3}));
    EXPECT_EQ(jacobi(k7, 3, {1, 1, 1}), number(3, {1, 3}));

    const std::vector<MultiplicativeCharacter> one = {multiplicative_character(k5, 4, 1)};
    EXPECT_EQ(code_of([&] { jacobi_sum(one); }), ErrorCode::ArityTooSmall);
    const std::vector<MultiplicativeCharacter> mixed = {multiplicative_character(k5, 4, 1),
                                                        multiplicative_character(k5, 2, 1)};
    EXPECT_EQ(code_of([&] { jacobi_sum(mixed); }), ErrorCode::BadDivisor);
    const std::vector<MultiplicativeCharacter> pair = {multiplicative_character(k5, 4, 1),
                                                       multiplicative_character(k5, 4, 1)};
    EXPECT_EQ(jacobi_sum(pair), j);
}

TEST(JacobiSum, ValuesMatchIndependentComputation) {
    auto k9 = ff::make_field(3, 2);
    EXPECT_EQ(jacobi(k9, 4, {1, 1}), integer(4, -3));
    EXPECT_EQ(jacobi(k9, 8, {1, 2}), integer(8, 3));
    auto k13 = ff::make_field(13, 1);
    EXPECT_EQ(jacobi(k13, 6, {1, 1, 1}), number(6, {-8, 15}));
    EXPECT_EQ(jacobi(k13, 12, {1, 1, 1, 1}), number(12, {5, 36, 15, -48}));
    auto k8 = ff::make_field(2, 3);
    EXPECT_EQ(jacobi(k8, 7, {1, 2, 3}), number(7, {-4, 4, 4, 0, 4}));
}

TEST(JacobiSum, BudgetIsEnforced) {
    auto k = ff::make_field(13, 1);
    EXPECT_EQ(code_of([&] { jacobi_sum(chars::RootsOfUnity(k, 12), std::vector<int>{1, 1, 1}, 100); }),
              ErrorCode::BudgetExceeded);
}

TEST(SumProperties, QuotientFormulaIsIndependentOfPsi) {
    for (auto [p, f] : kSmallFields) {
        auto k = ff::make_field(p, f);
        for (int d : divisors_of(k->order() - 1)) {
            if (d < 2 || d > 8) continue;
            for (int a1 = 1; a1 < d; ++a1) {
                for (int a2 = 1; a2 < d; ++a2) {
                    if ((a1 + a2) % d == 0) continue;
                    const auto j = jacobi(k, d, {a1, a2});
                    for (Elem c = 1; c < k->order(); ++c) {
                        const auto quotient = gauss(k, d, a1, c) * gauss(k, d, a2, c) / gauss(k, d, a1 + a2, c);
                        EXPECT_EQ(cyclo::cast_conductor(quotient, d), j) << p << "^" << f << " d=" << d;
                    }
                }
            }
        }
    }
}

TEST(SumProperties, WeilWeights) {
    for (auto [p, f] : kSmallFields) {
        auto k = ff::make_field(p, f);
        const cyclo::Integer q = static_cast<unsigned long>(k->order());
        for (int d : divisors_of(k->order() - 1)) {
            if (d < 2) continue;
            for (int a = 1; a < d; ++a) {
                EXPECT_EQ(cyclo::weil_weight(gauss(k, d, a, 1), q), 1);
                if ((2 * a) % d != 0) EXPECT_EQ(cyclo::weil_weight(jacobi(k, d, {a, a}), q), 1);
                if ((3 * a) % d != 0 && k->order() <= 13) EXPECT_EQ(cyclo::weil_weight(jacobi(k, d, {a, a, a}), q), 2);
            }
        }
    }
}

TEST(SumProperties, InducedCharactersGiveEqualSums) {
    auto k = ff::make_field(13, 1);
    for (int d_prime : {2, 3, 4, 6}) {
        const int d = 12;
        const int r = d / d_prime;
        for (int a = 1; a < d_prime; ++a) {
            for (Elem c : {1u, 5u}) EXPECT_EQ(gauss(k, d, a * r, c), gauss(k, d_prime, a, c));
            for (int b = 1; b < d_prime; ++b) EXPECT_EQ(jacobi(k, d, {a * r, b * r}), jacobi(k, d_prime, {a, b}));
        }
    }
}

TEST(GroupRing, GaussElementExamples) {
    auto k3 = ff::make_field(3, 1);
    auto g = gauss_element(k3, 2);
    GroupRingElement expected(GroupShape::field_times_roots(k3, 2));
    expected.add_term({1, 0}, integer(1, -1));
    expected.add_term({2, 1}, integer(1, -1));
    EXPECT_EQ(g, expected);

    auto k5 = ff::make_field(5, 1);
    auto g1 = gauss_element(k5, 1);
    ASSERT_EQ(g1.terms().size(), 4u);
    for (const auto& [key, value] : g1.terms()) {
        EXPECT_EQ(key[1], 0);
        EXPECT_EQ(value, integer(1, -1));
    }
    EXPECT_EQ(code_of([&] { gauss_element(k5, 3); }), ErrorCode::BadDivisor);
    // collisions only when d < q - 1
    for (int d : {1, 2, 4}) EXPECT_EQ(gauss_element(k5, d).augmentation(), integer(1, -4));
}

TEST(GroupRing, JacobiElementExamples) {
    auto k3 = ff::make_field(3, 1);
    auto j = jacobi_element(k3, 2, 2, 0);
    GroupRingElement expected(GroupShape::roots_power(2, 2));
    expected.add_term({0, 1}, integer(1, -1));
    expected.add_term({1, 0}, integer(1, -1));
    EXPECT_EQ(j, expected);

    auto k5 = ff::make_field(5, 1);
    EXPECT_EQ(jacobi_element(k5, 4, 2, 1).augmentation(), integer(1, -3));
    EXPECT_EQ(code_of([&] { jacobi_element(k5, 4, 1, 1); }), ErrorCode::ArityTooSmall);
    EXPECT_EQ(code_of([&] { jacobi_element(k5, 3, 2, 1); }), ErrorCode::BadDivisor);

    // j<c> = (c^((q-1)/d), ..., c^((q-1)/d)) j<1> for c != 0
    for (auto [p, f, d, n] : {std::tuple{5, 1, 4, 2}, std::tuple{7, 1, 3, 3}, std::tuple{3, 2, 8, 2}}) {
        auto k = ff::make_field(p, f);
        chars::RootsOfUnity mu(k, d);
        const auto base = jacobi_element(k, d, n, 1);
        for (Elem c = 1; c < k->order(); ++c) {
            GroupRingElement translate(GroupShape::roots_power(d, n));
            translate.add_term(GroupKey(static_cast<std::size_t>(n), mu.power_index(c)), integer(1, 1));
            EXPECT_EQ(jacobi_element(k, d, n, c), translate * base);
        }
    }
}

TEST(GroupRing, DegenerationMaps) {
    for (auto [p, f] : kSmallFields) {
        auto k = ff::make_field(p, f);
        const auto divs = divisors_of(k->order() - 1);
        for (int d : divs) {
            for (int d_prime : divs) {
                if (d % d_prime != 0) continue;
                EXPECT_EQ(gauss_element(k, d).degenerate(d_prime), gauss_element(k, d_prime));
                if (k->order() <= 9) {
                    for (Elem c : {Elem{0}, Elem{1}, Elem{2}}) {
                        EXPECT_EQ(jacobi_element(k, d, 2, c).degenerate(d_prime), jacobi_element(k, d_prime, 2, c));
                        EXPECT_EQ(jacobi_element(k, d, 3, c).degenerate(d_prime), jacobi_element(k, d_prime, 3, c));
                    }
                }
            }
        }
    }
}

TEST(GroupRing, ProjectorIdentities) {
    auto mu2 = GroupShape::roots_power(2, 1);
    const std::vector<std::int64_t> trivial = {0};
    GroupRingElement half(mu2);
    half.add_term({0}, CyclotomicNumber::from_rational(1, cyclo::Rational(1, 2)));
    half.add_term({1}, CyclotomicNumber::from_rational(1, cyclo::Rational(1, 2)));
    EXPECT_EQ(projector(mu2, trivial), half);

    for (const auto& shape : {GroupShape::roots_power(4, 1), GroupShape::roots_power(3, 2),
                              GroupShape::field_times_roots(ff::make_field(3, 1), 2)}) {
        const auto characters = all_characters(shape);
        GroupRingElement total(shape);
        for (const auto& chi : characters) {
            const auto e = projector(shape, chi);
            total += e;
            for (const auto& other : characters) {
                const auto product = e * projector(shape, other);
                if (other == chi) {
                    EXPECT_EQ(product, e);
                } else {
                    EXPECT_TRUE(product.terms().empty());
                }
            }
            for (const auto& g : shape.elements()) {
                GroupRingElement delta(shape);
                delta.add_term(g, integer(1, 1));
                EXPECT_EQ(delta * e, e.scaled(character_value(shape, chi, g)));
            }
        }
        EXPECT_EQ(total, GroupRingElement::unit(shape));
    }
    EXPECT_EQ(code_of([] { projector(GroupShape::units(5), std::vector<std::int64_t>{1}); }), ErrorCode::BadParameters);
}

TEST(GroupRing, ConvolutionIsAssociativeAndUnital) {
    auto k = ff::make_field(5, 1);
    const auto a = gauss_element(k, 4);
    const auto b = projector(a.shape(), std::vector<std::int64_t>{2, 1});
    const auto c = gauss_element(k, 4) + GroupRingElement::unit(a.shape());
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * GroupRingElement::unit(a.shape()), a);
    EXPECT_EQ(a * c, c * a);
    EXPECT_TRUE((a - a).terms().empty());
}

TEST(GroupRing, SerializesKeysAndCoefficients) {
    auto j = jacobi_element(ff::make_field(3, 1), 2, 2, 0).to_json();
    EXPECT_EQ(j.size(), 2u);
    EXPECT_EQ(j["(0,1)"], "1:[-1]");
    EXPECT_EQ(j["(1,0)"], "1:[-1]");
}

TEST(EigenCheck, Examples) {
    auto k5 = ff::make_field(5, 1);
    EXPECT_TRUE(eigen_check(k5, 4, 1, 1).pass());
    const std::vector<int> ones = {1, 1};
    EXPECT_TRUE(eigen_check_jacobi(k5, 4, 2, 1, ones).pass());
    auto k7 = ff::make_field(7, 1);
    auto report = eigen_check_jacobi(k7, 3, 2, 2, ones);
    EXPECT_TRUE(report.pass());
    // |G| e^chi has coefficient 1 at the identity, so both sides read chi^2(2^2) j_3(1,1)
    const auto expected = CyclotomicNumber::zeta_power(3, 2 * 2) * number(3, {1, 3});
    EXPECT_EQ(CyclotomicNumber::parse(report.rhs), expected);
    EXPECT_EQ(CyclotomicNumber::parse(report.lhs), expected);
    EXPECT_EQ(code_of([&] { eigen_check(k5, 4, 0, 1); }), ErrorCode::TrivialAdditive);
    EXPECT_EQ(code_of([&] { eigen_check_jacobi(k5, 4, 2, 0, ones); }), ErrorCode::PreconditionFailed);
}

TEST(EigenCheck, AllCharactersOnSmallFields) {
    for (auto [p, f] : {std::pair{3, 1}, std::pair{2, 2}, std::pair{5, 1}, std::pair{7, 1}, std::pair{3, 2}}) {
        auto k = ff::make_field(p, f);
        for (int d : divisors_of(k->order() - 1)) {
            for (Elem c = 1; c < k->order(); ++c) {
                for (int a = 0; a < d; ++a) EXPECT_TRUE(eigen_check(k, d, c, a).pass());
            }
            if (d > 4) continue;
            for (int a1 = 0; a1 < d; ++a1) {
                for (int a2 = 0; a2 < d; ++a2) {
                    const std::vector<int> avec = {a1, a2};
                    for (Elem c = 1; c < k->order(); ++c) {
                        const auto literal = eigen_check_jacobi(k, d, 2, c, avec);
                        const auto factored = eigen_check_jacobi(k, d, 2, c, avec, 0);
                        EXPECT_TRUE(literal.pass());
                        EXPECT_TRUE(factored.pass());
                        EXPECT_NE(literal.note, factored.note);
                    }
                }
            }
        }
    }
}

TEST(JacobiTable, CountsMatchEnumeration) {
    for (auto [p, f] : kSmallFields) {
        auto k = ff::make_field(p, f);
        for (int d : divisors_of(k->order() - 1)) {
            chars::RootsOfUnity mu(k, d);
            JacobiTable table(mu);
            for (int n = 1; n <= 3; ++n) {
                EXPECT_EQ(table.counts_one(n), tuple_counts(mu, n, 1)) << p << "^" << f << " d=" << d << " n=" << n;
                EXPECT_EQ(table.counts_zero(n), tuple_counts(mu, n, 0)) << p << "^" << f << " d=" << d << " n=" << n;
                for (Elem c = 1; c < k->order(); c += 3) EXPECT_EQ(table.counts(n, c), tuple_counts(mu, n, c));
            }
        }
    }
}

TEST(JacobiTable, ValuesMatchDirectSums) {
    for (auto [p, f] : {std::pair{5, 1}, std::pair{7, 1}, std::pair{3, 2}, std::pair{2, 3}, std::pair{13, 1}}) {
        auto k = ff::make_field(p, f);
        for (int d : divisors_of(k->order() - 1)) {
            if (d == 1) continue;
            chars::RootsOfUnity mu(k, d);
            JacobiTable table(mu);
            for (int n = 2; n <= 3; ++n) {
                const auto size = *nt::checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n));
                for (std::uint64_t i = 0; i < size; ++i) {
                    const auto avec = tuple_keys(i, d, n);
                    EXPECT_EQ(table.value(avec), jacobi_sum(mu, avec));
                }
            }
        }
    }
}

TEST(JacobiTable, DiagonalMatchesDirectSums) {
    for (auto [p, f] : {std::pair{5, 1}, std::pair{7, 1}, std::pair{3, 2}, std::pair{13, 1}}) {
        auto k = ff::make_field(p, f);
        for (int d : divisors_of(k->order() - 1)) {
            chars::RootsOfUnity mu(k, d);
            JacobiTable table(mu);
            for (int n = 2; n <= 4; ++n) {
                if (n == 4 && k->order() > 9) continue;
                for (int a = 0; a < d; ++a) {
                    EXPECT_EQ(table.diagonal_jacobi(a, n), jacobi_sum(mu, std::vector<int>(n, a)))
                        << p << "^" << f << " d=" << d << " n=" << n << " a=" << a;
                }
            }
        }
    }
}

TEST(JacobiTable, TransformMatchesPointwiseEvaluation) {
    auto k = ff::make_field(13, 1);
    chars::RootsOfUnity mu(k, 6);
    const auto counts = tuple_counts(mu, 3, 5);
    const auto values = exponent_transform(6, 3, counts, false);
    const auto phi = 2u;
    for (std::uint64_t i = 0; i < 216; ++i) {
        const auto avec = tuple_keys(i, 6, 3);
        std::vector<cyclo::Integer> nums = {values[i * phi], values[i * phi + 1]};
        EXPECT_EQ(CyclotomicNumber::from_numerators(6, nums), jacobi_from_counts(6, 3, counts, avec));
    }
}
