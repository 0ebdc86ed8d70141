#include <gtest/gtest.h>

#include "weakid/parse.hpp"

using namespace weakid;

namespace {

const GroupSpec kZ5 = parse_group("Zn:5");
const GroupSpec kZ3 = parse_group("Zn:3");
const GroupSpec kD3 = parse_group("Dn:3");
const GroupSpec kA4 = parse_group("A4");

GPolynomial gp(const std::string& s, const GroupSpec& g) { return parse_gpoly(s, g); }

} // namespace

TEST(Letters, StrAndNormalization) {
    EXPECT_EQ(letter_str(make_e(5, 0, 1)), "e0(x1)");
    EXPECT_EQ(letter_str(make_e(5, 1, 2)), "e1(x2)");
    EXPECT_EQ(letter_str(make_e(5, -1, 1)), "e-1(x1)");
    EXPECT_EQ(make_e(5, -1, 1).i, 4);
    EXPECT_EQ(make_e(5, 7, 1).i, 2);
    EXPECT_EQ(letter_str(make_he(3, 2, 2)), "he-1(x2)");
    EXPECT_EQ(letter_str(make_eps(2, 3, 1)), "eps23(x1)");
    Word w{make_e(5, 0, 1), make_e(5, 1, 2)};
    EXPECT_EQ(word_str(w), "e0(x1)*e1(x2)");
    std::map<unsigned, unsigned> md{{1, 1}, {2, 1}};
    EXPECT_EQ(word_multidegree(w), md);
}

TEST(Parse, LettersAndSums) {
    GPolynomial p = gp("e0(x1) + e1(x1) + e-1(x1)", kZ5);
    EXPECT_EQ(p.terms().size(), 3u);
    EXPECT_EQ(p.str(), "e0(x1) + e1(x1) + e-1(x1)");
    // juxtaposition is word concatenation
    EXPECT_EQ(gp("e0(x1)e1(x2)", kZ5).str(), "e0(x1)*e1(x2)");
    EXPECT_EQ(gp("e0(x1)*e1(x2)", kZ5), gp("e0(x1) e1(x2)", kZ5));
}

TEST(Parse, CoefficientsAndRoots) {
    // w is the primitive root of the group's conductor
    EXPECT_TRUE(gp("w^5 - 1", kZ5).is_zero());
    EXPECT_TRUE(gp("w*w*w - w^3", kZ5).is_zero());
    GPolynomial p = gp("1/2*e0(x1) - 2/4*e0(x1)", kZ5);
    EXPECT_TRUE(p.is_zero());
    EXPECT_EQ(gp("(1+w)*e1(x1)", kZ5).str(), "(1 + w)*e1(x1)");
    EXPECT_EQ(gp("-e0(x1)", kZ5).str(), "-e0(x1)");
    EXPECT_EQ(gp("3*e0(x1)", kZ5).str(), "3*e0(x1)");
    EXPECT_EQ(gp("0", kZ5).str(), "0");
}

TEST(Parse, CommutatorSugar) {
    EXPECT_EQ(gp("[e0(x1),e0(x2)]", kZ5),
              gp("e0(x1)e0(x2) - e0(x2)e0(x1)", kZ5));
    EXPECT_EQ(gp("[x1,[x1,x2]]", kZ3),
              gp("x1(x1 x2 - x2 x1) - (x1 x2 - x2 x1)x1", kZ3));
}

TEST(Parse, GroupLettersAndPi) {
    // raw group letters exist for the acting generators
    EXPECT_EQ(gp("g(x1)", kZ5).str(), "g(x1)");
    EXPECT_EQ(gp("h(x2)", kD3).str(), "h(x2)");
    EXPECT_EQ(gp("id(x1)", kZ5).str(), "id(x1)");
    GroupSpec z2 = parse_group("Zn:2");
    EXPECT_EQ(gp("pi0(x1)", z2), CycNum::from_rat(2, rat(2)) * gp("e0(x1)", z2));
    EXPECT_EQ(gp("pi1(x1)", z2), CycNum::from_rat(2, rat(2)) * gp("e1(x1)", z2));
}

TEST(Parse, Errors) {
    try {
        gp("e0(x1", kZ5);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.pos, 5u);
    }
    EXPECT_THROW(gp("", kZ5), ParseError);
    EXPECT_THROW(gp("e0(x0)", kZ5), ParseError);
    EXPECT_THROW(gp("he1(x1)", kZ5), ParseError);   // he needs a dihedral group
    EXPECT_THROW(gp("h(x1)", kZ5), ParseError);     // no h in a cyclic action
    EXPECT_THROW(gp("pi0(x1)", kZ5), ParseError);   // pi needs Zn:2
    EXPECT_THROW(gp("eps14(x1)", kA4), ParseError);
    EXPECT_THROW(gp("foo(x1)", kZ5), ParseError);
    EXPECT_THROW(gp("1/0", kZ5), ParseError);
    EXPECT_THROW(gp("e0(x1))", kZ5), ParseError);   // trailing input
}

TEST(Parse, PrintRoundTrip) {
    for (const char* s : {"e0(x1) + e1(x1) + e-1(x1)",
                          "e1(x1)*e-1(x2)*e1(x3)",
                          "(1 + w)*e0(x1) - e1(x2)",
                          "-e0(x1)*e0(x2)"}) {
        GPolynomial p = gp(s, kZ5);
        EXPECT_EQ(gp(p.str(), kZ5), p) << s;
    }
    for (const char* s : {"he1(x1)*e-1(x2)", "-he0(x1)", "h(x1)*g(x2)"}) {
        GPolynomial p = gp(s, kD3);
        EXPECT_EQ(gp(p.str(), kD3), p) << s;
    }
    GPolynomial q = gp("eps11(x1)*eps23(x2)", kA4);
    EXPECT_EQ(gp(q.str(), kA4), q);
}

TEST(Eval, SingleLetters) {
    unsigned N = 5;
    MPoly a = MPoly::variable(N, var_a(1));
    MPoly b = MPoly::variable(N, var_b(1));
    MPoly c = MPoly::variable(N, var_c(1));
    MPoly z(N);
    // e0 keeps the diagonal part, e1 keeps the lower corner, e-1 the upper
    EXPECT_EQ(evaluate(gp("e0(x1)", kZ5), kZ5), Mat2(a, z, z, -a));
    EXPECT_EQ(evaluate(gp("e1(x1)", kZ5), kZ5), Mat2(z, z, c, z));
    EXPECT_EQ(evaluate(gp("e-1(x1)", kZ5), kZ5), Mat2(z, b, z, z));
    EXPECT_EQ(evaluate(gp("x1", kZ5), kZ5), generic_matrix(N, 1));
}

TEST(Eval, ProductsAndLinearity) {
    GPolynomial p = gp("e0(x1)", kZ5), q = gp("e1(x2)", kZ5);
    EXPECT_EQ(evaluate(p * q, kZ5), mat_mul(evaluate(p, kZ5), evaluate(q, kZ5)));
    EXPECT_EQ(evaluate(p + q, kZ5), evaluate(p, kZ5) + evaluate(q, kZ5));
    CycNum s = CycNum::zeta(5);
    EXPECT_EQ(evaluate(s * p, kZ5), s * evaluate(p, kZ5));
    // the letter expansion of a raw group letter evaluates consistently
    GPolynomial raw = gp("g(x1)", kZ5);
    GPolynomial exp = gp("e0(x1) + w*e1(x1) + w^4*e-1(x1)", kZ5);
    EXPECT_EQ(evaluate(raw, kZ5), evaluate(exp, kZ5));
}

TEST(Eval, IdentityRecognition) {
    EXPECT_FALSE(is_weak_g_identity(gp("x1", kZ5), kZ5));
    EXPECT_TRUE(is_weak_g_identity(gp("e0(x1)e1(x2) + e1(x2)e0(x1)", kZ5), kZ5));
    EXPECT_TRUE(is_weak_g_identity(gp("e1(x1)e1(x2)", kZ5), kZ5));
    EXPECT_FALSE(is_weak_g_identity(gp("e1(x1)e-1(x2)", kZ5), kZ5));
    // completeness of the eps decomposition
    EXPECT_TRUE(is_weak_g_identity(
        gp("eps11(x1)+eps22(x1)+eps33(x1)-x1", kA4), kA4));
}

TEST(Eval, ConjugatedContext) {
    // conjugating the action preserves identities
    GroupSpec g = with_conductor(kZ3, 12);
    std::minstd_rand rng(3);
    C22 b = random_invertible_c22(12, rng);
    EvalContext ctx{g, adjoint_of_pgl2(b)};
    EXPECT_TRUE(is_weak_g_identity(gp("e0(x1)e1(x2) + e1(x2)e0(x1)", g), ctx));
    EXPECT_FALSE(is_weak_g_identity(gp("e0(x1)e1(x2)", g), ctx));
}

TEST(Eval, RawLetterNeedsOperator) {
    Letter l = make_raw("broken", nullptr, 1);
    GPolynomial p = GPolynomial::from_letter(5, l);
    EXPECT_THROW(evaluate(p, kZ5), Error);
}

TEST(GPoly, MultidegreeComponents) {
    GPolynomial p = gp("e0(x1)e1(x2) + e1(x1) + e0(x2)e1(x2)", kZ5);
    auto comps = multidegree_components(p);
    ASSERT_EQ(comps.size(), 3u);
    EXPECT_TRUE(comps.count(std::vector<unsigned>{1, 1}));
    EXPECT_TRUE(comps.count(std::vector<unsigned>{1, 0}));
    EXPECT_TRUE(comps.count(std::vector<unsigned>{0, 2}));
    GPolynomial sum(p.conductor());
    for (const auto& [md, q] : comps) sum = sum + q;
    EXPECT_EQ(sum, p);
}

TEST(GPoly, WordMapArithmetic) {
    GPolynomial p = gp("e0(x1)", kZ5);
    GPolynomial q = gp("e0(x1)", kZ5);
    EXPECT_TRUE((p - q).is_zero());
    GPolynomial prod = p * p;
    ASSERT_EQ(prod.terms().size(), 1u);
    EXPECT_EQ(prod.terms().begin()->first.size(), 2u);
    EXPECT_EQ((-p).str(), "-e0(x1)");
}
