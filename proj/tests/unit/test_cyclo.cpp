#include <gtest/gtest.h>

#include <random>

#include "cyclo/cyclotomic.hpp"
#include "cyclo/dense_ring.hpp"
#include "cyclo/prime_splitting.hpp"
#include "util/error.hpp"
#include "util/numtheory.hpp"

using namespace gjsum;
using namespace gjsum::cyclo;

namespace {

CyclotomicNumber num(int n, std::vector<long> coeffs) {
    std::vector<Rational> r;
    for (long c : coeffs) r.emplace_back(c);
    r.resize(context(n).degree(), 0);
    return CyclotomicNumber::from_coefficients(n, r);
}

CyclotomicNumber zeta(int n, int e = 1) { return CyclotomicNumber::zeta_power(n, e); }
CyclotomicNumber integer(long v) { return CyclotomicNumber::from_integer(1, v); }

CyclotomicNumber random_number(std::mt19937_64& rng, int n, int range = 5) {
    std::uniform_int_distribution<int> coef(-range, range);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<Rational> c;
    for (int i = 0; i < context(n).degree(); ++i) c.emplace_back(coef(rng), den(rng));
    for (auto& x : c) x.canonicalize();
    return CyclotomicNumber::from_coefficients(n, c);
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

}  // namespace

TEST(CyclotomicPolynomial, KnownSmallCases) {
    EXPECT_EQ(context(1).polynomial(), (std::vector<std::int64_t>{-1, 1}));
    EXPECT_EQ(context(2).polynomial(), (std::vector<std::int64_t>{1, 1}));
    EXPECT_EQ(context(6).polynomial(), (std::vector<std::int64_t>{1, -1, 1}));
    EXPECT_EQ(context(12).polynomial(), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
    // The first cyclotomic polynomial with a coefficient of absolute value 2.
    const auto& p105 = context(105).polynomial();
    EXPECT_EQ(p105.size(), 49u);
    EXPECT_EQ(p105[7], -2);
    EXPECT_EQ(p105[41], -2);
}

TEST(CyclotomicNumber, SerializationRoundTrip) {
    auto a = num(5, {1, -2, 0, 3}).scaled(Rational(3, 7));
    EXPECT_EQ(a.to_string(), "5:[3/7,-6/7,0,9/7]");
    EXPECT_EQ(CyclotomicNumber::parse(a.to_string()), a);
    EXPECT_EQ(CyclotomicNumber::parse("1:[-3]"), integer(-3));
    EXPECT_EQ(code_of([] { CyclotomicNumber::parse("4:[1,2,3]"); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { CyclotomicNumber::parse("x"); }), ErrorCode::InvalidArgument);
}

TEST(CyclotomicNumber, ZetaPowersReduce) {
    EXPECT_EQ(zeta(3, 2).to_string(), "3:[-1,-1]");
    EXPECT_EQ(zeta(4, 2), integer(-1));
    EXPECT_TRUE(zeta(7).pow(7).is_one());
}

TEST(CyclotomicNumber, RingAxiomsAndExactDivision) {
    std::mt19937_64 rng(3);
    for (int n : {3, 4, 5, 8, 9, 12, 15, 20}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto a = random_number(rng, n), b = random_number(rng, n), c = random_number(rng, n);
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * b, b * a);
            if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
            EXPECT_TRUE((a - a).is_zero());
        }
    }
}

TEST(GaloisApply, Examples) {
    EXPECT_EQ(galois_apply(2, zeta(3)), zeta(3, 2));
    auto a = num(5, {1, 1});
    EXPECT_EQ(galois_apply(1, a), a);
    EXPECT_EQ(galois_apply(-1, a), integer(1) + zeta(5, 4));
    EXPECT_EQ(code_of([] { galois_apply(3, zeta(6)); }), ErrorCode::NotCoprime);
}

TEST(GaloisApply, IsCompatibleAutomorphism) {
    std::mt19937_64 rng(5);
    for (int n : {5, 7, 9, 12}) {
        auto units = nt::units_mod(n);
        for (int trial = 0; trial < 5; ++trial) {
            auto a = random_number(rng, n), b = random_number(rng, n);
            for (int h : units) {
                EXPECT_EQ(galois_apply(h, a * b), galois_apply(h, a) * galois_apply(h, b));
                for (int h2 : units) EXPECT_EQ(galois_apply(h, galois_apply(h2, a)), galois_apply(h * h2 % n, a));
            }
        }
    }
}

TEST(CastConductor, UpAndDown) {
    auto up = cast_conductor(zeta(3), 6);
    EXPECT_EQ(up.conductor(), 6);
    EXPECT_EQ(up.to_string(), "6:[-1,1]");  // zeta_6^2 = zeta_6 - 1
    EXPECT_EQ(cast_conductor(up, 3), zeta(3));
    EXPECT_EQ(code_of([] { cast_conductor(zeta(12), 4); }), ErrorCode::NotInSubfield);
    EXPECT_EQ(cast_conductor(zeta(12, 3), 4), zeta(4));
    // zeta_3 in Q(zeta_15) intersected with Q(zeta_12).
    EXPECT_EQ(cast_conductor(cast_conductor(zeta(3), 15), 12), cast_conductor(zeta(3), 12));
    EXPECT_EQ(code_of([] { cast_conductor(zeta(5), 3); }), ErrorCode::NotInSubfield);
}

TEST(RootOfUnity, Examples) {
    EXPECT_EQ(is_root_of_unity(integer(-1)), 2);
    EXPECT_EQ(is_root_of_unity(integer(1) + zeta(3)), 6);
    EXPECT_EQ(is_root_of_unity(integer(2)), std::nullopt);
    EXPECT_EQ(is_root_of_unity(-zeta(5, 2)), 10);
    EXPECT_EQ(is_root_of_unity(num(5, {1, 1})), std::nullopt);
}

TEST(WeilWeight, Examples) {
    EXPECT_EQ(weil_weight(integer(5), 5), 2);
    EXPECT_EQ(weil_weight(integer(2), 7), std::nullopt);
    EXPECT_EQ(weil_weight(integer(1) + zeta(3), 7), 0);
    // Jacobi sum j(chi, chi) over F_5 with d = 4 is 1 + 2i.
    EXPECT_EQ(weil_weight(num(4, {1, 2}), 5), 1);
    EXPECT_EQ(weil_weight(num(4, {1, 2}).scaled(Rational(1, 5)), 5), -1);
    EXPECT_EQ(weil_weight(num(4, {1, 1}), 5), std::nullopt);
    EXPECT_EQ(code_of([] { weil_weight(CyclotomicNumber(3), 7); }), ErrorCode::ZeroArgument);
}

TEST(DenseRing, AgreesWithExactArithmetic) {
    std::mt19937_64 rng(9);
    for (int n : {7, 12, 20, 78}) {
        DenseRing ring(n);
        std::uniform_int_distribution<int> coef(-50, 50);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::int64_t> a(ring.degree()), b(ring.degree()), c(ring.degree());
            for (auto& x : a) x = coef(rng);
            for (auto& x : b) x = coef(rng);
            ring.multiply(a, b, c);
            EXPECT_EQ(ring.to_number(c), ring.to_number(a) * ring.to_number(b));
            ring.multiply_zeta(a, 5, c);
            EXPECT_EQ(ring.to_number(c), ring.to_number(a) * zeta(n, 5));
            ring.galois(a, n - 1, c);
            EXPECT_EQ(ring.to_number(c), ring.to_number(a).conj());
        }
    }
    DenseRing ring(3);
    std::vector<std::int64_t> big{INT64_MAX / 2, 0}, out(2);
    EXPECT_EQ(code_of([&] { ring.multiply(big, big, out); }), ErrorCode::ArithmeticOverflow);
}

TEST(PrimeSplitting, StructureOfDecomposition) {
    auto split = make_splitting(3, 7);
    EXPECT_EQ(split->f(), 1);
    EXPECT_EQ(split->q(), 7u);
    EXPECT_EQ(split->omega(), 2u);  // g = 3, omega = 3^2
    EXPECT_EQ(split->coset_reps(), (std::vector<int>{1, 2}));

    auto s13 = make_splitting(13, 3);
    EXPECT_EQ(s13->f(), 3);
    EXPECT_EQ(s13->coset_reps().size(), 4u);
    std::vector<int> seen(13, 0);
    for (int h : s13->coset_reps()) {
        for (int x : s13->decomposition_group()) ++seen[h * x % 13];
    }
    for (int h = 1; h < 13; ++h) EXPECT_EQ(seen[h], 1);
    EXPECT_EQ(code_of([] { make_splitting(6, 3); }), ErrorCode::BadParameters);
}

TEST(PadicValuation, Examples) {
    auto split = make_splitting(3, 7);
    EXPECT_EQ(padic_valuation(integer(7), *split, 1), 1);
    EXPECT_EQ(padic_valuation(integer(7), *split, 2), 1);
    EXPECT_EQ(padic_valuation(integer(1), *split, 2), 0);
    // j_3(1,1) over F_7 = 1 + 3 zeta_3 (direct summation).
    auto j = num(3, {1, 3});
    EXPECT_EQ(split->valuations(j), (std::vector<int>{1, 0}));
    EXPECT_EQ(padic_valuation(integer(1).scaled(Rational(1, 49)), *split, 1), -2);
    EXPECT_EQ(code_of([&] { padic_valuation(CyclotomicNumber(3), *split, 1); }), ErrorCode::ZeroArgument);
}

TEST(PadicValuation, AdditiveEquivariantAndNormCompatible) {
    std::mt19937_64 rng(13);
    for (auto [d, p] : std::vector<std::pair<int, int>>{{5, 11}, {5, 19}, {7, 2}, {12, 13}, {9, 19}, {8, 3}}) {
        auto split = make_splitting(d, p);
        auto units = nt::units_mod(d);
        for (int trial = 0; trial < 6; ++trial) {
            auto a = random_number(rng, d, 20), b = random_number(rng, d, 20);
            if (a.is_zero() || b.is_zero()) continue;
            auto va = split->valuations(a), vb = split->valuations(b), vab = split->valuations(a * b);
            for (std::size_t i = 0; i < va.size(); ++i) EXPECT_EQ(vab[i], va[i] + vb[i]);
            for (int h : units) {
                auto inv = *nt::inverse_mod(h, d);
                EXPECT_EQ(padic_valuation(a, *split, h), padic_valuation(galois_apply(inv, a), *split, 1));
            }
            // f * sum of valuations = v_p(norm).
            Rational norm = a.norm();
            Integer top = norm.get_num(), bottom = norm.get_den();
            Integer pp = p;
            int vn = static_cast<int>(mpz_remove(top.get_mpz_t(), top.get_mpz_t(), pp.get_mpz_t())) -
                     static_cast<int>(mpz_remove(bottom.get_mpz_t(), bottom.get_mpz_t(), pp.get_mpz_t()));
            int total = 0;
            for (int v : va) total += split->f() * v;
            EXPECT_EQ(total, vn);
        }
    }
}
