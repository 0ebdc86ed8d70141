#pragma once

// Named verification suites: each suite is a list of tagged G-polynomials
// that are expected to vanish identically on the pair (M2, sl2) under the
// chosen group action.  Tags carry the rule family and the instance
// parameters, e.g. "L6(4)[a=-1]" or "L13(7)[j=2,a=1,b=3]".

#include <string>
#include <vector>

#include "weakid/gpoly.hpp"

namespace weakid {

struct SuiteItem {
    std::string tag;
    GPolynomial poly;
};

inline std::vector<std::string> suite_names() {
    return {"lemma6", "lemma9", "lemma13", "z2", "prop6-graded"};
}

namespace detail {

inline std::string sgn_str(long a) { return a == 1 ? "1" : "-1"; }

struct SuiteCtx {
    GroupSpec g;
    std::shared_ptr<const Op3> id;

    explicit SuiteCtx(const GroupSpec& spec)
        : g(spec), id(std::make_shared<const Op3>(Op3::identity(spec.conductor))) {}

    GPolynomial E(long i, unsigned v) const {
        return GPolynomial::from_letter(g.conductor, make_e(g.n, i, v));
    }
    GPolynomial HE(long i, unsigned v) const {
        return GPolynomial::from_letter(g.conductor, make_he(g.n, i, v));
    }
    GPolynomial EP(int i, int j, unsigned v) const {
        return GPolynomial::from_letter(g.conductor, make_eps(i, j, v));
    }
    GPolynomial X(unsigned v) const {
        return GPolynomial::from_letter(g.conductor, make_raw("id", id, v));
    }
    GPolynomial PI(long i, unsigned v) const {
        return CycNum::from_rat(g.conductor, rat(2)) * E(i, v);
    }
    static GPolynomial comm(const GPolynomial& p, const GPolynomial& q) {
        return p * q - q * p;
    }
    static GPolynomial acomm(const GPolynomial& p, const GPolynomial& q) {
        return p * q + q * p;
    }
};

inline std::vector<SuiteItem> suite_lemma6(const GroupSpec& g) {
    if (g.kind != GroupKind::Cyclic || g.n < 2)
        throw GroupError("suite lemma6 needs a cyclic group with n >= 2");
    SuiteCtx c(g);
    std::vector<long> alphas = g.n >= 3 ? std::vector<long>{1, -1} : std::vector<long>{1};
    std::vector<SuiteItem> out;
    GPolynomial unit = c.E(0, 1) + c.E(1, 1);
    if (g.n >= 3) unit = unit + c.E(-1, 1);
    out.push_back({"L6(1)", unit - c.X(1)});
    if (g.n >= 3)
        for (long a : alphas)
            out.push_back({"L6(2)[a=" + sgn_str(a) + "]", c.E(a, 1) * c.E(a, 2)});
    out.push_back({"L6(3)", SuiteCtx::comm(c.E(0, 1), c.E(0, 2))});
    for (long a : alphas)
        out.push_back({"L6(4)[a=" + sgn_str(a) + "]",
                       c.E(a, 1) * c.E(-a, 2) * c.E(a, 3) -
                           c.E(a, 3) * c.E(-a, 2) * c.E(a, 1)});
    for (long a : alphas)
        out.push_back({"L6(5)[a=" + sgn_str(a) + "]",
                       SuiteCtx::acomm(c.E(0, 1), c.E(a, 2))});
    return out;
}

inline std::vector<SuiteItem> suite_z2(const GroupSpec& g) {
    if (g.kind != GroupKind::Cyclic || g.n != 2)
        throw GroupError("suite z2 needs the group Zn:2");
    SuiteCtx c(g);
    std::vector<SuiteItem> out;
    out.push_back({"z2(1)", SuiteCtx::comm(c.PI(0, 1), c.PI(0, 2))});
    out.push_back({"z2(2)", c.PI(1, 1) * c.PI(1, 2) * c.PI(1, 3) -
                                c.PI(1, 3) * c.PI(1, 2) * c.PI(1, 1)});
    out.push_back({"z2(3)", SuiteCtx::acomm(c.PI(0, 1), c.PI(1, 2))});
    return out;
}

inline std::vector<SuiteItem> suite_lemma9(const GroupSpec& g) {
    if (g.kind != GroupKind::Dihedral)
        throw GroupError("suite lemma9 needs a dihedral group");
    SuiteCtx c(g);
    const long alphas[2] = {1, -1};
    auto F = [&](int kind, long a, unsigned v) {
        return kind == 0 ? c.E(a, v) : c.HE(a, v);
    };
    auto fname = [](int kind) { return kind == 0 ? std::string("e") : std::string("he"); };
    std::vector<SuiteItem> out;
    out.push_back({"L9(1)", c.E(0, 1) + c.HE(0, 1)});
    for (int k = 0; k < 2; ++k)
        for (long a : alphas)
            out.push_back({"L9(2)[" + fname(k) + ",a=" + sgn_str(a) + "]",
                           SuiteCtx::acomm(c.E(0, 1), F(k, a, 2))});
    out.push_back({"L9(3)", c.E(0, 1) + c.E(1, 1) + c.E(-1, 1) - c.X(1)});
    out.push_back({"L9(4)", SuiteCtx::comm(c.E(0, 1), c.E(0, 2))});
    for (int k = 0; k < 2; ++k)
        for (long a : alphas)
            out.push_back({"L9(5)[" + fname(k) + ",a=" + sgn_str(a) + "]",
                           F(k, a, 1) * F(k, a, 2)});
    for (long a : alphas) {
        out.push_back({"L9(6)[e.he,a=" + sgn_str(a) + "]", c.E(a, 1) * c.HE(-a, 2)});
        out.push_back({"L9(6)[he.e,a=" + sgn_str(a) + "]", c.HE(a, 1) * c.E(-a, 2)});
    }
    for (int kf = 0; kf < 2; ++kf)
        for (int kg = 0; kg < 2; ++kg)
            for (long a : alphas)
                out.push_back({"L9(7)[" + fname(kf) + "." + fname(kg) +
                                   ",a=" + sgn_str(a) + "]",
                               F(kf, a, 1) * c.X(2) * F(kg, a, 3) -
                                   F(kf, a, 3) * c.X(2) * F(kg, a, 1)});
    for (long a : alphas)
        out.push_back({"L9(8)[a=" + sgn_str(a) + "]",
                       c.E(a, 1) * c.X(2) * c.HE(-a, 3) -
                           c.HE(-a, 3) * c.X(2) * c.E(a, 1)});
    for (long a : alphas)
        out.push_back({"L9(9)[a=" + sgn_str(a) + "]",
                       c.E(a, 1) * c.E(-a, 2) - c.HE(-a, 2) * c.HE(a, 1)});
    for (long a : alphas)
        out.push_back({"L9(10)[a=" + sgn_str(a) + "]",
                       c.E(a, 1) * c.HE(a, 2) - c.E(a, 2) * c.HE(a, 1)});
    return out;
}

inline std::vector<SuiteItem> suite_lemma13(const GroupSpec& g) {
    SuiteCtx c(g);
    std::vector<SuiteItem> out;
    auto s = [](int v) { return std::to_string(v); };
    out.push_back({"L13(1)", c.EP(1, 1, 1) + c.EP(2, 2, 1) + c.EP(3, 3, 1) - c.X(1)});
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            out.push_back({"L13(2)[a=" + s(a) + ",b=" + s(b) + "]",
                           SuiteCtx::comm(c.EP(1, a, 1), c.EP(1, b, 2))});
    for (int a = 1; a <= 3; ++a)
        for (int i = 2; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                out.push_back({"L13(3)[a=" + s(a) + ",i=" + s(i) + ",j=" + s(j) + "]",
                               SuiteCtx::acomm(c.EP(1, a, 1), c.EP(i, j, 2))});
    for (int i = 2; i <= 3; ++i) {
        int j = 5 - i;
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                for (int cc = 1; cc <= 3; ++cc)
                    out.push_back(
                        {"L13(4)[i=" + s(i) + ",a=" + s(a) + ",b=" + s(b) +
                             ",c=" + s(cc) + "]",
                         c.EP(i, a, 1) * c.EP(j, b, 2) * c.EP(i, cc, 3) -
                             c.EP(1, a, 1) * c.EP(1, b, 2) * c.EP(i, cc, 3)});
    }
    for (int i = 2; i <= 3; ++i)
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                out.push_back({"L13(5)[i=" + s(i) + ",a=" + s(a) + ",b=" + s(b) + "]",
                               c.EP(i, a, 1) * c.EP(i, b, 2)});
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            out.push_back({"L13(6)[a=" + s(a) + ",b=" + s(b) + "]",
                           c.EP(3, a, 1) * c.EP(2, b, 2) + c.EP(2, b, 2) * c.EP(3, a, 1) -
                               c.EP(1, a, 1) * c.EP(1, b, 2)});
    for (int j = 2; j <= 3; ++j)
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                out.push_back({"L13(7)[j=" + s(j) + ",a=" + s(a) + ",b=" + s(b) + "]",
                               c.EP(1, a, 1) * c.EP(j, b, 2) -
                                   c.EP(1, b, 2) * c.EP(j, a, 1)});
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            out.push_back({"L13(8)[a=" + s(a) + ",b=" + s(b) + "]",
                           c.EP(2, a, 1) * c.EP(3, b, 2) -
                               c.EP(2, b, 2) * c.EP(3, a, 1)});
    return out;
}

inline std::vector<SuiteItem> suite_prop6(const GroupSpec& g) {
    bool cyc = g.kind == GroupKind::Cyclic && g.n >= 2;
    bool dih = g.kind == GroupKind::Dihedral;
    if (!cyc && !dih)
        throw GroupError("suite prop6-graded needs a cyclic (n >= 2) or dihedral group");
    SuiteCtx c(g);
    // z letters: the odd part of the grading
    std::vector<std::pair<std::string, std::function<GPolynomial(unsigned)>>> zs;
    auto add_e = [&](long i) {
        zs.emplace_back("e" + std::string(i == 1 ? "1" : "-1"),
                        [&c, i](unsigned v) { return c.E(i, v); });
    };
    auto add_he = [&](long i) {
        zs.emplace_back("he" + std::string(i == 1 ? "1" : "-1"),
                        [&c, i](unsigned v) { return c.HE(i, v); });
    };
    add_e(1);
    if (g.n >= 3) add_e(-1);
    if (dih) {
        add_he(1);
        add_he(-1);
    }
    std::vector<SuiteItem> out;
    out.push_back({"P6(1)", SuiteCtx::comm(c.E(0, 1), c.E(0, 2))});
    for (const auto& [n1, z1] : zs)
        for (const auto& [n2, z2] : zs)
            for (const auto& [n3, z3] : zs)
                out.push_back({"P6(2)[" + n1 + "," + n2 + "," + n3 + "]",
                               z1(1) * z2(2) * z3(3) - z3(3) * z2(2) * z1(1)});
    for (const auto& [nz, z] : zs)
        out.push_back({"P6(3)[" + nz + "]", SuiteCtx::acomm(c.E(0, 1), z(2))});
    return out;
}

}  // namespace detail

inline std::vector<SuiteItem> build_suite(const std::string& name, const GroupSpec& g) {
    if (name == "lemma6") return detail::suite_lemma6(g);
    if (name == "lemma9") return detail::suite_lemma9(g);
    if (name == "lemma13") return detail::suite_lemma13(g);
    if (name == "z2") return detail::suite_z2(g);
    if (name == "prop6-graded") return detail::suite_prop6(g);
    throw Error("unknown suite: " + name);
}

// The suites a certificate for this group checks by default.
inline std::vector<std::string> default_suites(const GroupSpec& g) {
    switch (g.kind) {
        case GroupKind::Cyclic:
            if (g.n == 1) return {};
            if (g.n == 2) return {"lemma6", "z2"};
            return {"lemma6"};
        case GroupKind::Dihedral: return {"lemma9"};
        default: return {"lemma13"};
    }
}

}  // namespace weakid
