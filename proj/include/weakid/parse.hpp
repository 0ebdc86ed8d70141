#pragma once
// Text form of G-polynomials.  Grammar, loosely:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor)*
//   factor := '(' expr ')' | '[' expr ',' expr ']' | rational
//           | 'w' ['^' ['-'] int] | 'x' int | op '(' 'x' int ')'
//   op     := g | h | id | e<i> | he<i> | eps<r><c> | pi0 | pi1
// e/he indices may be negative and are reduced mod n; w is the primitive
// root of the group's ground field.

#include <cctype>
#include <string>

#include "weakid/gpoly.hpp"

namespace weakid {

namespace detail {

class Parser {
  public:
    Parser(const std::string& text, const GroupSpec& g) : s_(text), g_(g) {
        id_op_ = std::make_shared<const Op3>(Op3::identity(g.conductor));
        bool cyc = g.kind == GroupKind::Cyclic || g.kind == GroupKind::Dihedral;
        if (cyc) g_op_ = std::make_shared<const Op3>(g_op(g.conductor, g.n));
        if (g.kind == GroupKind::Dihedral)
            h_op_ = std::make_shared<const Op3>(h_op(g.conductor));
    }

    GPolynomial run() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("empty input", pos_);
        GPolynomial p = expr();
        skip();
        if (pos_ < s_.size()) throw ParseError("unexpected trailing input", pos_);
        return p;
    }

  private:
    const std::string& s_;
    GroupSpec g_;
    size_t pos_ = 0;
    std::shared_ptr<const Op3> id_op_, g_op_, h_op_;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool eat(char c) {
        skip();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "' " + what, pos_);
    }

    long integer() {
        skip();
        size_t start = pos_;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected a number", pos_);
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = 10 * v + (s_[pos_] - '0');
            if (v > 1000000000) throw ParseError("number too large", start);
            ++pos_;
        }
        return neg ? -v : v;
    }

    unsigned var_index() {
        long k = integer();
        if (k < 1) throw ParseError("variable index must be positive", pos_);
        return static_cast<unsigned>(k);
    }

    // True when the cursor sits on something that can start a factor.
    bool at_factor() {
        skip();
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) ||
               std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == '[';
    }

    GPolynomial expr() {
        bool neg = eat('-');
        GPolynomial p = term();
        if (neg) p = -p;
        for (;;) {
            skip();
            if (peek() == '+') {
                ++pos_;
                p = p + term();
            } else if (peek() == '-') {
                ++pos_;
                p = p - term();
            } else {
                return p;
            }
        }
    }

    GPolynomial term() {
        GPolynomial p = factor();
        for (;;) {
            skip();
            if (peek() == '*') {
                ++pos_;
                p = p * factor();
            } else if (at_factor()) {
                p = p * factor();
            } else {
                return p;
            }
        }
    }

    GPolynomial factor() {
        skip();
        size_t start = pos_;
        char c = peek();
        unsigned N = g_.conductor;
        if (c == '(') {
            ++pos_;
            GPolynomial p = expr();
            expect(')', "to close '('");
            return p;
        }
        if (c == '[') {
            ++pos_;
            GPolynomial p = expr();
            expect(',', "between commutator arguments");
            GPolynomial q = expr();
            expect(']', "to close '['");
            return p * q - q * p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = integer();
            if (peek() == '/') {
                ++pos_;
                long den = integer();
                if (den == 0) throw ParseError("zero denominator", start);
                return GPolynomial::from_rat(N, rat(num, den));
            }
            return GPolynomial::from_rat(N, rat(num));
        }
        if (!std::isalpha(static_cast<unsigned char>(c)))
            throw ParseError("expected a factor", pos_);

        size_t nstart = pos_;
        std::string name;
        while (std::isalpha(static_cast<unsigned char>(peek()))) name += s_[pos_++];

        if (name == "w") {
            long k = 1;
            if (peek() == '^') {
                ++pos_;
                k = integer();
            }
            return GPolynomial::from_cyc(N, CycNum::zeta(N, k));
        }
        if (name == "x") {
            unsigned v = var_index();
            return GPolynomial::from_letter(N, make_raw("id", id_op_, v));
        }
        if (name == "g" || name == "h" || name == "id") {
            std::shared_ptr<const Op3> op = name == "id" ? id_op_
                                          : name == "g"  ? g_op_
                                                         : h_op_;
            if (!op)
                throw ParseError("operator '" + name + "' is not defined for group " + g_.str(),
                                 nstart);
            return GPolynomial::from_letter(N, make_raw(name, op, applied_var()));
        }
        if (name == "e" || name == "he") {
            if (g_.kind != GroupKind::Cyclic && g_.kind != GroupKind::Dihedral)
                throw ParseError("operator '" + name + "' needs a cyclic or dihedral group",
                                 nstart);
            if (name == "he" && g_.kind != GroupKind::Dihedral)
                throw ParseError("operator 'he' needs a dihedral group", nstart);
            long i = integer();
            unsigned v = applied_var();
            return GPolynomial::from_letter(
                N, name == "e" ? make_e(g_.n, i, v) : make_he(g_.n, i, v));
        }
        if (name == "eps") {
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("eps needs two index digits", pos_);
            int i = s_[pos_++] - '0';
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("eps needs two index digits", pos_);
            int j = s_[pos_++] - '0';
            if (i < 1 || i > 3 || j < 1 || j > 3)
                throw ParseError("eps indices must be in 1..3", nstart);
            return GPolynomial::from_letter(N, make_eps(i, j, applied_var()));
        }
        if (name == "pi") {
            if (g_.kind != GroupKind::Cyclic || g_.n != 2)
                throw ParseError("pi operators need the group Zn:2", nstart);
            if (peek() != '0' && peek() != '1')
                throw ParseError("expected pi0 or pi1", nstart);
            long i = s_[pos_++] - '0';
            unsigned v = applied_var();
            return CycNum::from_rat(N, rat(2)) *
                   GPolynomial::from_letter(N, make_e(g_.n, i, v));
        }
        throw ParseError("unknown operator '" + name + "'", nstart);
    }

    unsigned applied_var() {
        expect('(', "after operator name");
        skip();
        if (peek() != 'x') throw ParseError("expected a variable like x1", pos_);
        ++pos_;
        unsigned v = var_index();
        expect(')', "after variable");
        return v;
    }
};

} // namespace detail

inline GPolynomial parse_gpoly(const std::string& text, const GroupSpec& g) {
    return detail::Parser(text, g).run();
}

} // namespace weakid
