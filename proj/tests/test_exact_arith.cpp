#include <gtest/gtest.h>

#include <random>

#include "weakid/mpoly.hpp"

using namespace weakid;

namespace {

RPoly rp(std::initializer_list<long> cs) {
    RPoly p;
    for (long c : cs) p.push_back(rat(c));
    return p;
}

// random element of Q(zeta_N) with small coefficients
CycNum random_cyc(unsigned N, std::minstd_rand& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    CycNum z(N);
    for (unsigned i = 0; i < euler_phi(N); ++i)
        z = z + CycNum::zeta(N, i) * rat(num(rng), den(rng));
    return z;
}

} // namespace

TEST(Rat, CanonicalForm) {
    EXPECT_EQ(rat(2, 4), rat(1, 2));
    EXPECT_EQ(rat(-3, -6), rat(1, 2));
    EXPECT_EQ(rat(3, -6), rat(-1, 2));
    EXPECT_EQ(rat_str(rat(-10, 4)), "-5/2");
    EXPECT_THROW(rat(1, 0), Error);
    EXPECT_EQ(rat_inv(rat(-2, 7)), rat(-7, 2));
    EXPECT_THROW(rat_inv(rat(0)), Error);
}

TEST(Cyclotomic, EulerPhi) {
    EXPECT_EQ(euler_phi(1), 1u);
    EXPECT_EQ(euler_phi(2), 1u);
    EXPECT_EQ(euler_phi(4), 2u);
    EXPECT_EQ(euler_phi(8), 4u);
    EXPECT_EQ(euler_phi(12), 4u);
    EXPECT_EQ(euler_phi(20), 8u);
}

TEST(Cyclotomic, KnownPolynomials) {
    EXPECT_EQ(cyclotomic_polynomial(1), rp({-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(2), rp({1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(3), rp({1, 1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(4), rp({1, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(6), rp({1, -1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(12), rp({1, 0, -1, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(20), rp({1, 0, -1, 0, 1, 0, -1, 0, 1}));
}

TEST(Cyclotomic, ProductOverDivisorsIsXnMinus1) {
    for (unsigned n = 1; n <= 12; ++n) {
        RPoly prod = rp({1});
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0) prod = detail::rp_mul(prod, cyclotomic_polynomial(d));
        RPoly expect(n + 1, rat(0));
        expect[0] = rat(-1);
        expect[n] = rat(1);
        EXPECT_EQ(prod, expect) << "n=" << n;
    }
}

TEST(CycNum, PrimitiveRoot) {
    for (unsigned N : {5u, 8u, 12u}) {
        CycNum one = CycNum::from_rat(N, rat(1));
        for (unsigned k = 1; k < N; ++k)
            EXPECT_NE(CycNum::zeta(N, static_cast<long>(k)), one) << N << " " << k;
        EXPECT_EQ(CycNum::zeta(N, static_cast<long>(N)), one);
    }
}

TEST(CycNum, FieldAxiomsOnRandomElements) {
    std::minstd_rand rng(20260819);
    unsigned N = 12;
    CycNum one = CycNum::from_rat(N, rat(1));
    for (int t = 0; t < 25; ++t) {
        CycNum a = random_cyc(N, rng), b = random_cyc(N, rng), c = random_cyc(N, rng);
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inv(), one);
            if (!b.is_zero()) EXPECT_EQ((a * b).inv(), b.inv() * a.inv());
        }
    }
}

TEST(CycNum, InverseOfZeroThrows) {
    EXPECT_THROW(CycNum(7).inv(), Error);
}

TEST(CycNum, DivisionAndStr) {
    unsigned N = 4;
    CycNum i = CycNum::zeta(4);
    EXPECT_EQ((i * i), CycNum::from_rat(N, rat(-1)));
    EXPECT_EQ((CycNum::from_rat(N, rat(1)) / i), CycNum::zeta(4, 3));
    EXPECT_EQ(i.str(), "w");
    EXPECT_EQ((CycNum::from_rat(N, rat(1, 2)) - i).str(), "1/2 - w");
    EXPECT_EQ(CycNum(N).str(), "0");
}

TEST(CycNum, ConductorMismatchThrows) {
    CycNum a = CycNum::zeta(3), b = CycNum::zeta(4);
    EXPECT_THROW(a + b, Error);
    EXPECT_THROW(a * b, Error);
}

TEST(CycNum, EmbeddingOfSmallerRoots) {
    // zeta_3 inside Q(zeta_12) still has order 3
    CycNum z3 = cyc_embed(3, 1, 12);
    CycNum one = CycNum::from_rat(12, rat(1));
    EXPECT_NE(z3, one);
    EXPECT_NE(z3 * z3, one);
    EXPECT_EQ(z3 * z3 * z3, one);
    // 1 + zeta_3 + zeta_3^2 = 0
    EXPECT_TRUE((one + z3 + z3 * z3).is_zero());
    EXPECT_THROW(cyc_embed(5, 1, 12), Error);
}

TEST(CycNum, GaloisIsAnAutomorphism) {
    std::minstd_rand rng(7);
    unsigned N = 12;
    for (unsigned k : {5u, 7u, 11u}) {
        CycNum a = random_cyc(N, rng), b = random_cyc(N, rng);
        EXPECT_EQ(galois(a + b, k), galois(a, k) + galois(b, k));
        EXPECT_EQ(galois(a * b, k), galois(a, k) * galois(b, k));
        EXPECT_EQ(galois(CycNum::zeta(N), k), CycNum::zeta(N, k));
        EXPECT_EQ(galois(CycNum::from_rat(N, rat(3, 5)), k), CycNum::from_rat(N, rat(3, 5)));
    }
}

TEST(MPoly, VariableOrder) {
    // a1 < a2 < b1 < c1 drives monomial recovery later on
    EXPECT_LT(var_a(1), var_a(2));
    EXPECT_LT(var_a(2), var_b(1));
    EXPECT_LT(var_b(7), var_c(1));
    EXPECT_EQ(var_str(var_b(3)), "b3");
}

TEST(MPoly, MultiplicationAgainstNaiveOracle) {
    unsigned N = 3;
    MPoly a1 = MPoly::variable(N, var_a(1));
    MPoly b2 = MPoly::variable(N, var_b(2));
    MPoly p = a1 + b2;
    MPoly sq = p * p;
    // (a1 + b2)^2 = a1^2 + 2 a1 b2 + b2^2
    MPoly expect = a1 * a1 + CycNum::from_rat(N, rat(2)) * (a1 * b2) + b2 * b2;
    EXPECT_EQ(sq, expect);
    EXPECT_EQ(sq.terms().size(), 3u);

    // sparse product against a hand-built table
    MPoly q = a1 * b2 * b2 - CycNum::zeta(3) * (a1 * a1);
    Mono m_ab2 = mono_mul(Mono{{var_a(1), 1}}, Mono{{var_b(2), 2}});
    ASSERT_EQ(q.terms().count(m_ab2), 1u);
    EXPECT_EQ(q.terms().at(m_ab2), CycNum::from_rat(N, rat(1)));
    Mono m_a2 = Mono{{var_a(1), 2}};
    EXPECT_EQ(q.terms().at(m_a2), -CycNum::zeta(3));
}

TEST(MPoly, CancellationAndZero) {
    unsigned N = 5;
    MPoly a = MPoly::variable(N, var_a(1));
    MPoly z = a - a;
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.str(), "0");
    EXPECT_TRUE((a * z).is_zero());
    MPoly s = a * CycNum(N);
    EXPECT_TRUE(s.is_zero());
}

TEST(MPoly, ConductorMismatchThrows) {
    MPoly a = MPoly::variable(3, var_a(1));
    MPoly b = MPoly::variable(4, var_a(1));
    EXPECT_THROW(a + b, Error);
    EXPECT_THROW(a * b, Error);
}
