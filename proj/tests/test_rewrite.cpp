#include <gtest/gtest.h>

#include "weakid/parse.hpp"
#include "weakid/rewrite.hpp"

using namespace weakid;

namespace {

GPolynomial gp(const std::string& s, const GroupSpec& g) { return parse_gpoly(s, g); }

std::string nf_str(const std::string& s, const std::string& group) {
    GroupSpec g = parse_group(group);
    return RuleSet::for_group(g).normalize(gp(s, g)).str();
}

// all words with the given multidegree over the ruleset's canonical alphabet
void all_words(const RuleSet& rs, std::vector<unsigned>& rem, Word& cur,
               std::vector<Word>& out) {
    bool live = false;
    for (unsigned v = 1; v <= rem.size(); ++v) {
        if (rem[v - 1] == 0) continue;
        live = true;
        --rem[v - 1];
        for (const Letter& l : rs.canonical_letters(v)) {
            cur.push_back(l);
            all_words(rs, rem, cur, out);
            cur.pop_back();
        }
        ++rem[v - 1];
    }
    if (!live) out.push_back(cur);
}

bool lex_less(const std::vector<long>& a, const std::vector<long>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// normalize every word of the multidegree and check the contract:
// each step strictly drops the measure, the result is a normal form,
// normalizing again is a fixed point, and evaluation is preserved.
void sweep(const std::string& group, std::vector<unsigned> md, size_t expect_words) {
    GroupSpec g = parse_group(group);
    RuleSet rs = RuleSet::for_group(g);
    std::vector<Word> words;
    Word cur;
    all_words(rs, md, cur, words);
    ASSERT_EQ(words.size(), expect_words);
    for (const Word& w : words) {
        GPolynomial p = GPolynomial::from_word(g.conductor, w);
        StepObserver obs = [&](const RewriteStep& st) {
            std::vector<long> before = rs.measure(st.before);
            for (const auto& [c, seg] : st.rhs) {
                Word nw(st.before.begin(), st.before.begin() + static_cast<long>(st.pos));
                nw.insert(nw.end(), seg.begin(), seg.end());
                nw.insert(nw.end(),
                          st.before.begin() + static_cast<long>(st.pos + st.len),
                          st.before.end());
                EXPECT_TRUE(lex_less(rs.measure(nw), before))
                    << st.tag << " did not decrease the measure on " << word_str(st.before);
            }
        };
        GPolynomial nf = rs.normalize(p, kDefaultStepBudget, obs);
        EXPECT_TRUE(rs.is_normal(nf)) << word_str(w);
        EXPECT_EQ(rs.normalize(nf), nf) << word_str(w);
        EXPECT_EQ(evaluate(nf, g), evaluate(p, g)) << word_str(w);
    }
}

} // namespace

TEST(Rewrite, FrozenNormalForms) {
    EXPECT_EQ(nf_str("x1", "Zn:3"), "e0(x1) + e1(x1) + e-1(x1)");
    EXPECT_EQ(nf_str("e1(x2)e-1(x2)e1(x1)", "Zn:3"), "e1(x1)*e-1(x2)*e1(x2)");
    EXPECT_EQ(nf_str("e1(x1)e1(x2)", "Zn:3"), "0");
    EXPECT_EQ(nf_str("g(x1)", "Zn:3"), "e0(x1) + w*e1(x1) + (-1 - w)*e-1(x1)");
    EXPECT_EQ(nf_str("h(x1)", "Dn:3"), "-e0(x1) + he1(x1) + he-1(x1)");
    EXPECT_EQ(nf_str("he1(x2)he-1(x3)", "Dn:3"), "e-1(x3)*e1(x2)");
    EXPECT_EQ(nf_str("eps21(x1)eps32(x2)eps23(x3)", "A4"),
              "eps11(x1)*eps12(x2)*eps23(x3)");
    EXPECT_EQ(nf_str("e0(x1)", "Zn:1"), "id(x1)");
}

TEST(Rewrite, BasisCounts) {
    auto count = [](const std::string& group, std::vector<unsigned> md) {
        return RuleSet::for_group(parse_group(group)).enumerate_basis(md).size();
    };
    EXPECT_EQ(count("Zn:3", {1}), 3u);
    EXPECT_EQ(count("Zn:3", {1, 1}), 9u);
    EXPECT_EQ(count("Zn:2", {1, 1}), 5u);
    EXPECT_EQ(count("Zn:1", {1, 1}), 2u);
    EXPECT_EQ(count("Dn:3", {1, 1}), 17u);
    EXPECT_EQ(count("A4", {1}), 9u);
    EXPECT_EQ(count("A4", {1, 1}), 36u);
    EXPECT_THROW(count("Zn:3", {1, 0, 1}), Error);
}

TEST(Rewrite, BasisWordsAreFixedPoints) {
    for (const char* group : {"Zn:3", "Zn:2", "Dn:3", "A4"}) {
        GroupSpec g = parse_group(group);
        RuleSet rs = RuleSet::for_group(g);
        for (const Word& b : rs.enumerate_basis({1, 1})) {
            GPolynomial p = GPolynomial::from_word(g.conductor, b);
            EXPECT_TRUE(rs.is_normal_word(b)) << word_str(b);
            EXPECT_EQ(rs.normalize(p), p) << word_str(b);
        }
    }
}

TEST(Rewrite, CanonicalSweepCyclic) { sweep("Zn:3", {1, 1, 1}, 162); }
TEST(Rewrite, CanonicalSweepZ2) { sweep("Zn:2", {1, 1, 1}, 48); }
TEST(Rewrite, CanonicalSweepDihedral) { sweep("Dn:3", {1, 1}, 50); }
TEST(Rewrite, CanonicalSweepEps) { sweep("A4", {1, 1}, 162); }

TEST(Rewrite, NonNormalWords) {
    GroupSpec z3 = parse_group("Zn:3");
    RuleSet rs = RuleSet::for_group(z3);
    EXPECT_FALSE(rs.is_normal_word({make_e(3, 1, 1), make_e(3, 1, 2)}));  // e1 e1
    EXPECT_FALSE(rs.is_normal_word({make_e(3, 1, 1), make_e(3, 0, 2)}));  // e0 on the right
    EXPECT_FALSE(rs.is_normal(gp("x1", z3)));  // raw letter still to expand

    GroupSpec d3 = parse_group("Dn:3");
    RuleSet rd = RuleSet::for_group(d3);
    EXPECT_FALSE(rd.is_normal_word({make_he(3, 0, 1)}));  // he0 rewrites to -e0
    EXPECT_FALSE(rd.is_normal_word({make_he(3, 1, 1), make_e(3, -1, 2)}));  // vanishes

    RuleSet re = RuleSet::for_group(parse_group("A4"));
    EXPECT_FALSE(re.is_normal_word({make_eps(3, 1, 1), make_eps(2, 1, 2)}));  // row 3 before 2
}

TEST(Rewrite, DisableRules) {
    GroupSpec z5 = parse_group("Zn:5");
    RuleSet full = RuleSet::for_group(z5);
    RuleSet weak = RuleSet::for_group(z5);
    EXPECT_THROW(weak.disable("nope"), Error);
    weak.disable("L6(4)");
    GPolynomial p = gp("e1(x2)e-1(x2)e1(x1)", z5);
    EXPECT_FALSE(full.is_normal(p));
    EXPECT_EQ(weak.normalize(p), p);  // without the sort rule this word is stuck
    EXPECT_NE(full.normalize(p), p);
}

TEST(Rewrite, StepBudget) {
    GroupSpec z3 = parse_group("Zn:3");
    RuleSet rs = RuleSet::for_group(z3);
    GPolynomial p = gp("x1 x2", z3);
    EXPECT_THROW(rs.normalize(p, 1), BudgetError);
    try {
        rs.normalize(p, 1);
    } catch (const BudgetError& e) {
        EXPECT_STREQ(e.what(), "rewriting exceeded the step budget (1)");
    }
    EXPECT_NO_THROW(rs.normalize(p));  // default budget is plenty
}

TEST(Rewrite, AlphabetChecks) {
    GroupSpec z3 = parse_group("Zn:3");
    RuleSet rs = RuleSet::for_group(z3);
    GPolynomial eps_poly = GPolynomial::from_letter(z3.conductor, make_eps(1, 1, 1));
    EXPECT_THROW(rs.normalize(eps_poly), GroupError);
    GPolynomial he_poly = GPolynomial::from_letter(z3.conductor, make_he(3, 1, 1));
    EXPECT_THROW(rs.normalize(he_poly), GroupError);
    GPolynomial wrong_n = GPolynomial::from_letter(z3.conductor, make_e(5, 1, 1));
    EXPECT_THROW(rs.normalize(wrong_n), GroupError);
}

TEST(Rewrite, DescribeListsRules) {
    auto tags = [](const std::string& group) {
        std::vector<std::string> out;
        for (const auto& [tag, desc] : RuleSet::for_group(parse_group(group)).describe())
            out.push_back(tag);
        return out;
    };
    auto has = [](const std::vector<std::string>& v, const std::string& t) {
        return std::find(v.begin(), v.end(), t) != v.end();
    };
    auto z = tags("Zn:5");
    EXPECT_EQ(z.front(), "expand");
    EXPECT_TRUE(has(z, "annihilate"));
    EXPECT_TRUE(has(z, "L6(4)"));
    auto d = tags("Dn:3");
    EXPECT_TRUE(has(d, "L9(1)"));
    EXPECT_TRUE(has(d, "L9(9)"));
    auto e = tags("A4");
    EXPECT_TRUE(has(e, "L13(6)"));
    EXPECT_FALSE(has(e, "annihilate"));
}

TEST(Rewrite, SpanningAlphabets) {
    auto names = [](const std::string& group) {
        RuleSet rs = RuleSet::for_group(parse_group(group));
        std::vector<std::string> out;
        for (const Letter& l : rs.spanning_letters(1)) out.push_back(letter_str(l));
        return out;
    };
    EXPECT_EQ(names("Zn:1"), (std::vector<std::string>{"id(x1)"}));
    EXPECT_EQ(names("Zn:3"),
              (std::vector<std::string>{"e0(x1)", "e1(x1)", "e-1(x1)", "id(x1)", "g(x1)"}));
    EXPECT_EQ(names("Zn:4").size(), 6u);  // adds the vanishing e2
    auto d4 = names("Dn:4");
    EXPECT_EQ(d4.size(), 11u);
    EXPECT_TRUE(std::find(d4.begin(), d4.end(), "he0(x1)") != d4.end());
    EXPECT_TRUE(std::find(d4.begin(), d4.end(), "he2(x1)") != d4.end());
    EXPECT_EQ(names("A4").size(), 11u);  // 9 units, raw id, one raw generator
    // the redundant letters evaluate like their expansions, so normalizing
    // them must land inside the canonical span
    GroupSpec d4g = parse_group("Dn:4");
    RuleSet rd = RuleSet::for_group(d4g);
    for (const Letter& l : rd.spanning_letters(1)) {
        GPolynomial p = GPolynomial::from_letter(d4g.conductor, l);
        GPolynomial nf = rd.normalize(p);
        EXPECT_TRUE(rd.is_normal(nf)) << letter_str(l);
        EXPECT_EQ(evaluate(nf, d4g), evaluate(p, d4g)) << letter_str(l);
    }
}
