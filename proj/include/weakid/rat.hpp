#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace weakid {

// Exact rationals. mpq_class keeps the canonical form we rely on everywhere:
// gcd(|num|, den) = 1 and den > 0, provided values are built through the
// helpers below (raw mpq_class(num, den) does not canonicalize by itself).
using Rat = mpq_class;
using Int = mpz_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GroupError : Error {
    using Error::Error;
};

struct BudgetError : Error {
    using Error::Error;
};

struct ParseError : Error {
    size_t pos;
    ParseError(const std::string& msg, size_t p)
        : Error(msg + " at position " + std::to_string(p)), pos(p) {}
};

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw Error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_inv(const Rat& a) {
    if (a == 0) throw Error("inverse of zero");
    return Rat(1) / a;
}

inline std::string rat_str(const Rat& a) { return a.get_str(); }

}  // namespace weakid
