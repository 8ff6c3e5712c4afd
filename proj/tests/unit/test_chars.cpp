#include <gtest/gtest.h>

#include <functional>

#include "chars/characters.hpp"
#include "cyclo/prime_splitting.hpp"
#include "util/error.hpp"

using namespace gjsum;
using namespace gjsum::chars;
using cyclo::CyclotomicNumber;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

CyclotomicNumber zeta(int n, std::int64_t e) { return CyclotomicNumber::zeta_power(n, e); }
CyclotomicNumber integer(int n, long v) { return CyclotomicNumber::from_integer(n, v); }

}  // namespace

TEST(Characters, AdditiveExamples) {
    auto k5 = ff::make_field(5, 1);
    auto psi = additive_character(k5, 1);
    EXPECT_EQ(eval_additive(psi, 1), zeta(5, 1));
    EXPECT_EQ(eval_additive(psi, 0), integer(5, 1));

    auto f9 = ff::make_field(3, 2);
    const Elem x = 3;  // t with t^2 = -1 for the modulus t^2 + 1
    ASSERT_EQ(f9->mul(x, x), f9->neg(1));
    EXPECT_TRUE(eval_additive(additive_character(f9, 1), x).is_one());
    EXPECT_EQ(code_of([&] { eval_additive(psi, 7); }), ErrorCode::FieldMismatch);
}

TEST(Characters, AdditiveIsHomomorphismAndConjugates) {
    auto k = ff::make_field(3, 3);
    for (Elem c : {1u, 5u, 17u}) {
        auto psi = additive_character(k, c);
        for (Elem x = 0; x < k->order(); x += 3) {
            for (Elem y = 0; y < k->order(); y += 5) {
                EXPECT_EQ(eval_additive(psi, k->add(x, y)), eval_additive(psi, x) * eval_additive(psi, y));
            }
            EXPECT_EQ(eval_additive(psi.conjugate(), x), eval_additive(psi, x).conj());
        }
    }
}

TEST(Characters, MultiplicativeExamples) {
    auto k5 = ff::make_field(5, 1);
    auto chi = multiplicative_character(k5, 4, 1);
    EXPECT_EQ(eval_mult(chi, 4), integer(4, -1));
    EXPECT_EQ(eval_mult(chi, 3), zeta(4, 3));
    EXPECT_EQ(code_of([&] { eval_mult(multiplicative_character(k5, 2, 1), 2); }), ErrorCode::NotInMuD);
    EXPECT_EQ(code_of([&] { eval_mult(chi, 0); }), ErrorCode::NotInMuD);
    EXPECT_EQ(code_of([&] { multiplicative_character(k5, 3, 1); }), ErrorCode::BadDivisor);
    auto trivial = multiplicative_character(k5, 4, 0);
    for (Elem m : {1u, 2u, 3u, 4u}) EXPECT_TRUE(eval_mult(trivial, m).is_one());
    EXPECT_EQ(chi.conjugate().a, 3);
}

TEST(Characters, Orthogonality) {
    for (auto [p, f] : {std::pair{5, 1}, std::pair{7, 1}, std::pair{3, 2}, std::pair{2, 4}}) {
        auto k = ff::make_field(p, f);
        for (Elem c = 1; c < k->order(); c += 2) {
            CyclotomicNumber total(p);
            for (Elem x = 0; x < k->order(); ++x) total += eval_additive(additive_character(k, c), x);
            EXPECT_TRUE(total.is_zero());
        }
        const auto n = static_cast<int>(k->order() - 1);
        for (int d = 2; d <= n; ++d) {
            if (n % d != 0) continue;
            RootsOfUnity mu(k, d);
            for (int a = 1; a < d; ++a) {
                auto chi = multiplicative_character(k, d, a);
                CyclotomicNumber total(d);
                for (int j = 0; j < d; ++j) total += eval_mult(chi, k->pow(mu.omega(), j));
                EXPECT_TRUE(total.is_zero()) << p << "^" << f << " d=" << d << " a=" << a;
            }
        }
    }
}

TEST(Characters, PowerIndexMatchesDefinition) {
    auto k = ff::make_field(13, 1);
    RootsOfUnity mu(k, 6);
    for (Elem m = 1; m < 13; ++m) {
        EXPECT_EQ(k->pow(mu.omega(), mu.power_index(m)), k->pow(m, 2));
        EXPECT_EQ(mu.index(k->pow(m, 2)), mu.power_index(m));
    }
}

TEST(Characters, PowerResidue) {
    auto split = cyclo::make_splitting(3, 7);
    EXPECT_TRUE(power_residue(*split, 1, 1).is_one());
    EXPECT_EQ(power_residue(*split, 2, 1), zeta(3, 2));
    EXPECT_TRUE(power_residue(*split, 5, 0).is_one());
    EXPECT_EQ(code_of([&] { power_residue(*split, 0, 1); }), ErrorCode::ZeroArgument);
}

TEST(Characters, PowerResidueCongruence) {
    for (auto [d, p] : {std::pair{3, 7}, std::pair{4, 5}, std::pair{5, 2}, std::pair{8, 3}}) {
        auto split = cyclo::make_splitting(d, p);
        const auto& k = split->residue_field();
        const std::int64_t e = static_cast<std::int64_t>((k->order() - 1) / d);
        for (Elem x = 1; x < k->order(); ++x) {
            for (int a = 0; a < d; ++a) {
                const auto value = power_residue(*split, x, a);
                // reduce zeta_d -> omega
                auto nums = value.numerators();
                Elem reduced = 0;
                for (std::size_t i = 0; i < nums.size(); ++i) {
                    const long c = (cyclo::Integer(nums[i] % p).get_si() + p) % p;
                    reduced = k->add(reduced, k->mul(k->from_integer(c), k->pow(split->omega(), static_cast<int>(i))));
                }
                EXPECT_EQ(reduced, k->pow(x, e * a)) << "d=" << d << " p=" << p << " x=" << x << " a=" << a;
            }
        }
    }
}

TEST(Characters, LiftIdentityAndQuadraticExtension) {
    auto k5 = ff::make_field(5, 1);
    auto psi = additive_character(k5, 1);
    auto chi = multiplicative_character(k5, 2, 1);

    auto same = lift_characters(psi, chi, 1);
    EXPECT_EQ(same.psi.field->order(), 5u);
    for (Elem x = 0; x < 5; ++x) EXPECT_EQ(eval_additive(same.psi, x), eval_additive(psi, x));

    auto lifted = lift_characters(psi, chi, 2);
    ASSERT_EQ(lifted.psi.field->order(), 25u);
    const auto& emb = *lifted.embedding;
    for (Elem x = 0; x < 5; ++x) {
        EXPECT_EQ(eval_additive(lifted.psi, emb(x)), eval_additive(psi, k5->mul(2, x)));
    }
    for (Elem m : {1u, 4u}) {
        EXPECT_EQ(eval_mult(lifted.chi, emb(m)), eval_mult(chi, m));
    }
    const auto& K = lifted.chi.field;
    const auto roots = lifted.chi.roots();
    for (Elem y = 1; y < K->order(); ++y) {
        const Elem image = K->pow(y, static_cast<std::int64_t>((K->order() - 1) / 2));
        EXPECT_EQ(eval_mult_power(lifted.chi, y), eval_mult(chi, emb.preimage(image)));
        EXPECT_EQ(roots.power_index(y), roots.index(image));
    }
}

TEST(Characters, LiftedAdditiveIsTraceComposite) {
    for (auto [p, f, r] : {std::tuple{2, 2, 3}, std::tuple{3, 1, 3}, std::tuple{5, 1, 2}, std::tuple{3, 2, 2}}) {
        auto k = ff::make_field(p, f);
        for (Elem c = 1; c < k->order(); ++c) {
            auto psi = additive_character(k, c);
            auto lifted = lift_characters(psi, multiplicative_character(k, 1, 0), r);
            const auto& K = lifted.psi.field;
            for (Elem y = 0; y < K->order(); ++y) {
                const Elem t = lifted.embedding->preimage(K->relative_trace(y, k->order()));
                EXPECT_EQ(lifted.psi.exponent(y), psi.exponent(t));
            }
        }
    }
}

TEST(Characters, Admissibility) {
    const std::vector<int> good = {1, 1};
    const std::vector<int> zero_entry = {0, 1};
    const std::vector<int> zero_sum = {1, 3};
    EXPECT_TRUE(admissible(good, 4));
    EXPECT_FALSE(admissible(zero_entry, 4));
    EXPECT_FALSE(admissible(zero_sum, 4));
}

TEST(Characters, Serialization) {
    auto k = ff::make_field(3, 2);
    auto j = to_json(multiplicative_character(k, 4, 3));
    EXPECT_EQ(j["kind"], "mult");
    EXPECT_EQ(j["p"], 3);
    EXPECT_EQ(j["f"], 2);
    EXPECT_EQ(j["d"], 4);
    EXPECT_EQ(j["a"], 3);
    auto ja = to_json(additive_character(k, 5));
    EXPECT_EQ(ja["kind"], "add");
    EXPECT_EQ(ja["c"], 5);
}
