#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <vector>

#include "weakid/rat.hpp"

namespace weakid {

// Dense univariate polynomial over Q, coeff[i] on x^i, no trailing zeros.
using RPoly = std::vector<Rat>;

namespace detail {

inline void rp_trim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RPoly rp_mul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    rp_trim(r);
    return r;
}

inline RPoly rp_sub(RPoly a, const RPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    rp_trim(a);
    return a;
}

inline RPoly rp_scale(RPoly a, const Rat& s) {
    for (auto& c : a) c *= s;
    rp_trim(a);
    return a;
}

// quotient/remainder by a non-zero divisor; exact over Q
inline std::pair<RPoly, RPoly> rp_divmod(RPoly num, const RPoly& den) {
    if (den.empty()) throw Error("polynomial division by zero");
    RPoly q;
    if (num.size() >= den.size()) q.assign(num.size() - den.size() + 1, Rat(0));
    const Rat lead_inv = rat_inv(den.back());
    while (num.size() >= den.size()) {
        size_t shift = num.size() - den.size();
        Rat c = num.back() * lead_inv;
        q[shift] = c;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        rp_trim(num);
        if (num.size() >= den.size() && num.size() == shift + den.size())
            throw Error("polynomial division failed to reduce degree");
    }
    return {q, num};
}

}  // namespace detail

inline unsigned euler_phi(unsigned n) {
    unsigned result = n, m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// Phi_n by exact division of x^n - 1 by the product of Phi_d over proper d | n.
inline const RPoly& cyclotomic_polynomial(unsigned n) {
    if (n == 0) throw Error("cyclotomic polynomial needs n >= 1");
    static std::map<unsigned, RPoly> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // compute without recursive locking: divisors in increasing order
    std::vector<unsigned> todo{n};
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0 && !cache.count(d)) todo.push_back(d);
    std::sort(todo.begin(), todo.end());
    for (unsigned m : todo) {
        if (cache.count(m)) continue;
        RPoly xn(m + 1, Rat(0));
        xn[0] = rat(-1);
        xn[m] = rat(1);
        RPoly prod{rat(1)};
        for (unsigned d = 1; d < m; ++d)
            if (m % d == 0) prod = detail::rp_mul(prod, cache.at(d));
        auto [q, r] = detail::rp_divmod(xn, prod);
        if (!r.empty()) throw Error("cyclotomic division left a remainder");
        cache[m] = q;
    }
    return cache.at(n);
}

// Element of Q(zeta_N) as a residue mod Phi_N: coeffs has length phi(N).
class CycNum {
  public:
    explicit CycNum(unsigned N) : n_(check(N)), c_(euler_phi(N), Rat(0)) {}

    static CycNum from_rat(unsigned N, const Rat& q) {
        CycNum z(N);
        z.c_[0] = q;
        return z;
    }

    static CycNum zeta(unsigned N, long k = 1) {
        long m = static_cast<long>(N);
        long e = ((k % m) + m) % m;
        CycNum z(N);
        RPoly x(static_cast<size_t>(e) + 1, Rat(0));
        x[static_cast<size_t>(e)] = rat(1);
        z.assign_reduced(x);
        return z;
    }

    unsigned conductor() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& q) { return q == 0; });
    }
    bool is_rational() const {
        return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& q) { return q == 0; });
    }
    const Rat& rat_value() const {
        if (!is_rational()) throw Error("not a rational value");
        return c_[0];
    }

    friend CycNum operator+(CycNum a, const CycNum& b) {
        a.match(b);
        for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
        return a;
    }
    friend CycNum operator-(CycNum a, const CycNum& b) {
        a.match(b);
        for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
        return a;
    }
    CycNum operator-() const {
        CycNum r = *this;
        for (auto& q : r.c_) q = -q;
        return r;
    }
    friend CycNum operator*(const CycNum& a, const CycNum& b) {
        a.match(b);
        RPoly pa(a.c_.begin(), a.c_.end()), pb(b.c_.begin(), b.c_.end());
        detail::rp_trim(pa);
        detail::rp_trim(pb);
        CycNum r(a.n_);
        r.assign_reduced(detail::rp_mul(pa, pb));
        return r;
    }
    friend CycNum operator*(const CycNum& a, const Rat& s) {
        CycNum r = a;
        for (auto& q : r.c_) q *= s;
        return r;
    }
    friend CycNum operator*(const Rat& s, const CycNum& a) { return a * s; }

    // extended Euclid against Phi_N; every non-zero residue is invertible
    CycNum inv() const {
        if (is_zero()) throw Error("inverse of zero");
        RPoly r0 = cyclotomic_polynomial(n_);
        RPoly r1(c_.begin(), c_.end());
        detail::rp_trim(r1);
        RPoly t0{}, t1{rat(1)};
        while (!r1.empty()) {
            auto [q, r2] = detail::rp_divmod(r0, r1);
            RPoly t2 = detail::rp_sub(t0, detail::rp_mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.size() != 1) throw Error("element not invertible mod Phi_N");
        CycNum out(n_);
        out.assign_reduced(detail::rp_scale(t0, rat_inv(r0[0])));
        return out;
    }

    friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inv(); }

    friend bool operator==(const CycNum& a, const CycNum& b) {
        a.match(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }
    friend bool operator<(const CycNum& a, const CycNum& b) {
        a.match(b);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            int cmp = cmp_rat(a.c_[i], b.c_[i]);
            if (cmp != 0) return cmp < 0;
        }
        return false;
    }

    // printed as a polynomial in w = zeta_N, e.g. "1/2 - w^2"
    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            Rat q = c_[i];
            if (first) {
                if (q < 0) {
                    os << "-";
                    q = -q;
                }
            } else {
                os << (q < 0 ? " - " : " + ");
                if (q < 0) q = -q;
            }
            first = false;
            bool unit = (q == 1) && i > 0;
            if (!unit) os << rat_str(q);
            if (i > 0) {
                if (!unit) os << "*";
                os << "w";
                if (i > 1) os << "^" << i;
            }
        }
        if (first) os << "0";
        return os.str();
    }

  private:
    static unsigned check(unsigned N) {
        if (N == 0) throw Error("conductor must be positive");
        return N;
    }
    static int cmp_rat(const Rat& a, const Rat& b) { return mpq_cmp(a.get_mpq_t(), b.get_mpq_t()); }
    void match(const CycNum& o) const {
        if (n_ != o.n_) throw Error("conductor mismatch");
    }
    void assign_reduced(RPoly p) {
        const RPoly& phi = cyclotomic_polynomial(n_);
        if (p.size() >= phi.size()) p = detail::rp_divmod(std::move(p), phi).second;
        c_.assign(euler_phi(n_), Rat(0));
        for (size_t i = 0; i < p.size(); ++i) c_[i] = p[i];
    }

    unsigned n_;
    std::vector<Rat> c_;
};

// zeta_n^k inside Q(zeta_N); requires n | N
inline CycNum cyc_embed(unsigned n, long k, unsigned N) {
    if (n == 0 || N == 0 || N % n != 0) throw Error("cyc_embed: n must divide N");
    return CycNum::zeta(N, k * static_cast<long>(N / n));
}

// Galois map zeta_N -> zeta_N^k, gcd(k, N) = 1; field automorphism, fixes Q
inline CycNum galois(const CycNum& a, unsigned k) {
    unsigned N = a.conductor();
    if (std::gcd(k, N) != 1u) throw Error("galois exponent not coprime to conductor");
    CycNum r(N);
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        r = r + CycNum::zeta(N, static_cast<long>(i * k)) * a.coeffs()[i];
    }
    return r;
}

}  // namespace weakid
