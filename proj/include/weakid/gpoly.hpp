#pragma once
// Formal polynomials whose letters are operators applied to variables:
// e_i(x_k), he_i(x_k), eps_ij(x_k), or a named raw operator like g(x_k).
// Words multiply by concatenation; evaluation substitutes generic traceless
// matrices and composes in M2.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weakid/group.hpp"

namespace weakid {

enum class LKind { E, HE, EPS, RAW };

struct Letter {
    LKind kind;
    unsigned n = 0;   // cyclic order for E/HE letters (index lives mod n)
    long i = 0;       // e/he index, stored as the residue in [0, n)
    int ei = 0;       // eps row
    int ej = 0;       // eps column
    unsigned var = 0; // variable index, 1-based
    std::string raw_name;
    std::shared_ptr<const Op3> raw_op;

    friend bool operator==(const Letter& x, const Letter& y) {
        return x.kind == y.kind && x.n == y.n && x.i == y.i && x.ei == y.ei &&
               x.ej == y.ej && x.var == y.var && x.raw_name == y.raw_name;
    }
    friend bool operator!=(const Letter& x, const Letter& y) { return !(x == y); }
    friend bool operator<(const Letter& x, const Letter& y) {
        auto key = [](const Letter& l) {
            return std::tuple<int, unsigned, long, int, int, unsigned,
                              const std::string&>(static_cast<int>(l.kind), l.n, l.i,
                                                  l.ei, l.ej, l.var, l.raw_name);
        };
        return key(x) < key(y);
    }
};

inline Letter make_e(unsigned n, long i, unsigned var) {
    if (n == 0) throw Error("make_e: n must be positive");
    if (var == 0) throw Error("make_e: variables are 1-based");
    Letter l;
    l.kind = LKind::E;
    l.n = n;
    l.i = mod_norm(i, n);
    l.var = var;
    return l;
}

inline Letter make_he(unsigned n, long i, unsigned var) {
    Letter l = make_e(n, i, var);
    l.kind = LKind::HE;
    return l;
}

inline Letter make_eps(int i, int j, unsigned var) {
    if (i < 1 || i > 3 || j < 1 || j > 3) throw Error("make_eps: indices in 1..3");
    if (var == 0) throw Error("make_eps: variables are 1-based");
    Letter l;
    l.kind = LKind::EPS;
    l.ei = i;
    l.ej = j;
    l.var = var;
    return l;
}

inline Letter make_raw(const std::string& name, std::shared_ptr<const Op3> op, unsigned var) {
    if (var == 0) throw Error("make_raw: variables are 1-based");
    Letter l;
    l.kind = LKind::RAW;
    l.var = var;
    l.raw_name = name;
    l.raw_op = std::move(op);
    return l;
}

// Index printed as -1 when it is the residue n-1 (and that differs from 1).
inline std::string e_index_str(unsigned n, long i) {
    if (n >= 3 && i == static_cast<long>(n) - 1) return "-1";
    return std::to_string(i);
}

inline std::string letter_str(const Letter& l) {
    std::string head;
    switch (l.kind) {
        case LKind::E: head = "e" + e_index_str(l.n, l.i); break;
        case LKind::HE: head = "he" + e_index_str(l.n, l.i); break;
        case LKind::EPS:
            head = "eps" + std::to_string(l.ei) + std::to_string(l.ej);
            break;
        case LKind::RAW: head = l.raw_name; break;
    }
    return head + "(x" + std::to_string(l.var) + ")";
}

using Word = std::vector<Letter>;

inline std::string word_str(const Word& w) {
    std::string s;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) s += "*";
        s += letter_str(w[k]);
    }
    return s;
}

inline std::map<unsigned, unsigned> word_multidegree(const Word& w) {
    std::map<unsigned, unsigned> d;
    for (const auto& l : w) ++d[l.var];
    return d;
}

class GPolynomial {
  public:
    explicit GPolynomial(unsigned N) : n_(N) {}

    static GPolynomial from_cyc(unsigned N, const CycNum& c) {
        GPolynomial p(N);
        if (!c.is_zero()) p.terms_.emplace(Word{}, c);
        return p;
    }
    static GPolynomial from_rat(unsigned N, const Rat& q) {
        return from_cyc(N, CycNum::from_rat(N, q));
    }
    static GPolynomial from_letter(unsigned N, const Letter& l) {
        GPolynomial p(N);
        p.terms_.emplace(Word{l}, CycNum::from_rat(N, rat(1)));
        return p;
    }
    static GPolynomial from_word(unsigned N, const Word& w, const CycNum& c) {
        GPolynomial p(N);
        if (!c.is_zero()) p.terms_.emplace(w, c);
        return p;
    }
    static GPolynomial from_word(unsigned N, const Word& w) {
        return from_word(N, w, CycNum::from_rat(N, rat(1)));
    }

    unsigned conductor() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Word, CycNum>& terms() const { return terms_; }

    void add_term(const Word& w, const CycNum& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    friend GPolynomial operator+(const GPolynomial& x, const GPolynomial& y) {
        GPolynomial r = x;
        for (const auto& [w, c] : y.terms_) r.add_term(w, c);
        return r;
    }
    friend GPolynomial operator-(const GPolynomial& x, const GPolynomial& y) {
        GPolynomial r = x;
        for (const auto& [w, c] : y.terms_) r.add_term(w, -c);
        return r;
    }
    GPolynomial operator-() const {
        GPolynomial r(n_);
        for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
        return r;
    }
    friend GPolynomial operator*(const GPolynomial& x, const GPolynomial& y) {
        GPolynomial r(x.n_);
        for (const auto& [wx, cx] : x.terms_)
            for (const auto& [wy, cy] : y.terms_) {
                Word w = wx;
                w.insert(w.end(), wy.begin(), wy.end());
                r.add_term(w, cx * cy);
            }
        return r;
    }
    friend GPolynomial operator*(const CycNum& s, const GPolynomial& x) {
        GPolynomial r(x.n_);
        if (s.is_zero()) return r;
        for (const auto& [w, c] : x.terms_) r.terms_.emplace(w, s * c);
        return r;
    }
    friend bool operator==(const GPolynomial& x, const GPolynomial& y) {
        return x.n_ == y.n_ && x.terms_ == y.terms_;
    }
    friend bool operator!=(const GPolynomial& x, const GPolynomial& y) { return !(x == y); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            CycNum coef = c;
            bool neg = false;
            if (coef.is_rational() && sgn(coef.rat_value()) < 0) {
                neg = true;
                coef = -coef;
            }
            if (first) {
                if (neg) s += "-";
                first = false;
            } else {
                s += neg ? " - " : " + ";
            }
            std::string cs = coef.str();
            bool is_one = coef.is_rational() && coef.rat_value() == 1;
            if (w.empty()) {
                s += (cs.find(' ') != std::string::npos) ? "(" + cs + ")" : cs;
                continue;
            }
            if (!is_one) {
                if (cs.find(' ') != std::string::npos || cs[0] == '-')
                    s += "(" + cs + ")*";
                else
                    s += cs + "*";
            }
            s += word_str(w);
        }
        return s;
    }

  private:
    unsigned n_;
    std::map<Word, CycNum> terms_;
};

// ---------------------------------------------------------------------------
// Evaluation in M2: each variable becomes a generic traceless matrix, each
// letter applies its operator to the variable's coordinates, and the word
// multiplies out.  An optional conjugator C replaces every operator M by
// C M C^{-1}, realizing the same action in a changed basis.
// ---------------------------------------------------------------------------
inline Op3 op3_of_letter(const Letter& l, const GroupSpec& g) {
    unsigned N = g.conductor;
    switch (l.kind) {
        case LKind::E: return idempotent_op(N, l.n, l.i);
        case LKind::HE: return h_idempotent_op(N, l.n, l.i);
        case LKind::EPS: return epsilon_op(N, l.ei, l.ej);
        case LKind::RAW:
            if (!l.raw_op) throw Error("letter " + l.raw_name + " has no operator");
            return *l.raw_op;
    }
    throw Error("op3_of_letter: bad kind");
}

struct EvalContext {
    GroupSpec group;
    std::optional<Op3> conjugator;

    Op3 letter_op(const Letter& l) const {
        Op3 m = op3_of_letter(l, group);
        if (conjugator) return *conjugator * m * op3_inverse(*conjugator);
        return m;
    }
};

inline Mat2 evaluate(const GPolynomial& p, const EvalContext& ctx) {
    unsigned N = p.conductor();
    Mat2 total = mat_zero(N);
    for (const auto& [w, c] : p.terms()) {
        Mat2 prod = mat_identity(N);
        for (const auto& l : w) {
            SL2Coords x = generic_coords(N, l.var);
            SL2Coords y = op3_apply(ctx.letter_op(l), x);
            prod = mat_mul(prod, to_mat2(y));
        }
        total = total + c * prod;
    }
    return total;
}

inline Mat2 evaluate(const GPolynomial& p, const GroupSpec& g) {
    return evaluate(p, EvalContext{g, std::nullopt});
}

inline bool is_weak_g_identity(const GPolynomial& p, const EvalContext& ctx) {
    return is_zero_mat(evaluate(p, ctx));
}

inline bool is_weak_g_identity(const GPolynomial& p, const GroupSpec& g) {
    return is_zero_mat(evaluate(p, g));
}

// Split into homogeneous components by multidegree.  Keys are multiplicity
// vectors indexed by variable (entry v-1 counts x_v), padded to the largest
// variable appearing anywhere in p.
inline std::map<std::vector<unsigned>, GPolynomial>
multidegree_components(const GPolynomial& p) {
    unsigned maxvar = 0;
    for (const auto& [w, c] : p.terms())
        for (const auto& l : w) maxvar = std::max(maxvar, l.var);
    std::map<std::vector<unsigned>, GPolynomial> out;
    for (const auto& [w, c] : p.terms()) {
        std::vector<unsigned> deg(maxvar, 0);
        for (const auto& l : w) ++deg[l.var - 1];
        auto it = out.find(deg);
        if (it == out.end())
            it = out.emplace(deg, GPolynomial(p.conductor())).first;
        it->second.add_term(w, c);
    }
    return out;
}

} // namespace weakid
