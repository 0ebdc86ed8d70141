#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "weakid/cyclotomic.hpp"

namespace weakid {

// Commuting indeterminates a_i, b_i, c_i (i >= 1). Ids are ordered
// a1 < a2 < ... < b1 < b2 < ... < c1 < c2 < ...; the independence arguments
// recover monomials from evaluations through exactly this order.
using VarId = uint32_t;

inline constexpr uint32_t kVarBlock = 1u << 24;

inline VarId var_a(unsigned i) { return 0 * kVarBlock + i; }
inline VarId var_b(unsigned i) { return 1 * kVarBlock + i; }
inline VarId var_c(unsigned i) { return 2 * kVarBlock + i; }

inline char var_kind(VarId v) { return static_cast<char>('a' + v / kVarBlock); }
inline unsigned var_index(VarId v) { return v % kVarBlock; }

inline std::string var_str(VarId v) {
    return std::string(1, var_kind(v)) + std::to_string(var_index(v));
}

// sorted (VarId, exponent) pairs, exponents > 0; empty = the unit monomial
using Mono = std::vector<std::pair<VarId, unsigned>>;

inline std::string mono_str(const Mono& m) {
    if (m.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [v, e] : m) {
        if (!first) os << "*";
        first = false;
        os << var_str(v);
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

inline Mono mono_mul(const Mono& x, const Mono& y) {
    Mono r;
    r.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].first < y[j].first)
            r.push_back(x[i++]);
        else if (y[j].first < x[i].first)
            r.push_back(y[j++]);
        else {
            r.emplace_back(x[i].first, x[i].second + y[j].second);
            ++i, ++j;
        }
    }
    for (; i < x.size(); ++i) r.push_back(x[i]);
    for (; j < y.size(); ++j) r.push_back(y[j]);
    return r;
}

// Sparse multivariate polynomial over Q(zeta_N); no zero coefficients stored.
class MPoly {
  public:
    explicit MPoly(unsigned N) : n_(N) {}

    static MPoly from_cyc(const CycNum& c) {
        MPoly p(c.conductor());
        if (!c.is_zero()) p.terms_.emplace(Mono{}, c);
        return p;
    }
    static MPoly from_rat(unsigned N, const Rat& q) { return from_cyc(CycNum::from_rat(N, q)); }
    static MPoly variable(unsigned N, VarId v) {
        MPoly p(N);
        p.terms_.emplace(Mono{{v, 1}}, CycNum::from_rat(N, rat(1)));
        return p;
    }

    unsigned conductor() const { return n_; }
    const std::map<Mono, CycNum>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Mono& m, const CycNum& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MPoly operator+(MPoly a, const MPoly& b) {
        a.match(b);
        for (auto& [m, c] : b.terms_) a.add_term(m, c);
        return a;
    }
    friend MPoly operator-(MPoly a, const MPoly& b) {
        a.match(b);
        for (auto& [m, c] : b.terms_) a.add_term(m, -c);
        return a;
    }
    MPoly operator-() const {
        MPoly r(n_);
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.match(b);
        MPoly r(a.n_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }
    friend MPoly operator*(const MPoly& a, const CycNum& s) {
        MPoly r(a.n_);
        if (s.is_zero()) return r;
        for (auto& [m, c] : a.terms_) r.add_term(m, c * s);
        return r;
    }
    friend MPoly operator*(const CycNum& s, const MPoly& a) { return a * s; }

    friend bool operator==(const MPoly& a, const MPoly& b) {
        a.match(b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            if (m.empty()) {
                os << "(" << c.str() << ")";
            } else if (c.is_rational() && c.rat_value() == 1) {
                os << mono_str(m);
            } else {
                os << "(" << c.str() << ")*" << mono_str(m);
            }
        }
        return os.str();
    }

  private:
    void match(const MPoly& o) const {
        if (n_ != o.n_) throw Error("conductor mismatch");
    }

    unsigned n_;
    std::map<Mono, CycNum> terms_;
};

}  // namespace weakid
