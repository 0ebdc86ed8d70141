#pragma once
// Finite subgroups of PGL2 acting on sl2 coordinates, their linear operators
// on the coordinate space (a,b,c), and the canonical idempotent operators.

#include <array>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "weakid/mat2.hpp"

namespace weakid {

// ---------------------------------------------------------------------------
// Op3: linear operator on the 3-dimensional coordinate space of sl2,
// written in the basis v1 = e11 - e22, v2 = e12, v3 = e21.  Column k holds
// the coordinates of the image of v_k.
// ---------------------------------------------------------------------------
class Op3 {
  public:
    explicit Op3(unsigned N) : n_(N) {
        m_.reserve(9);
        for (int i = 0; i < 9; ++i) m_.push_back(CycNum(N));
    }

    static Op3 identity(unsigned N) {
        Op3 r(N);
        for (int i = 0; i < 3; ++i) r.at(i, i) = CycNum::from_rat(N, rat(1));
        return r;
    }

    unsigned conductor() const { return n_; }

    CycNum& at(int row, int col) { return m_[static_cast<size_t>(3 * row + col)]; }
    const CycNum& at(int row, int col) const { return m_[static_cast<size_t>(3 * row + col)]; }

    bool is_zero() const {
        for (const auto& e : m_)
            if (!e.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Op3& x, const Op3& y) { return x.n_ == y.n_ && x.m_ == y.m_; }
    friend bool operator!=(const Op3& x, const Op3& y) { return !(x == y); }

    friend Op3 operator+(const Op3& x, const Op3& y) {
        Op3 r(x.n_);
        for (size_t i = 0; i < 9; ++i) r.m_[i] = x.m_[i] + y.m_[i];
        return r;
    }
    friend Op3 operator-(const Op3& x, const Op3& y) {
        Op3 r(x.n_);
        for (size_t i = 0; i < 9; ++i) r.m_[i] = x.m_[i] - y.m_[i];
        return r;
    }
    friend Op3 operator*(const CycNum& s, const Op3& x) {
        Op3 r(x.n_);
        for (size_t i = 0; i < 9; ++i) r.m_[i] = s * x.m_[i];
        return r;
    }
    // Composition: (x*y) applied to v is x(y(v)).
    friend Op3 operator*(const Op3& x, const Op3& y) {
        Op3 r(x.n_);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CycNum s = x.at(i, 0) * y.at(0, j);
                s = s + x.at(i, 1) * y.at(1, j);
                s = s + x.at(i, 2) * y.at(2, j);
                r.at(i, j) = s;
            }
        return r;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < 3; ++i) {
            s += (i ? ", [" : "[");
            for (int j = 0; j < 3; ++j) {
                if (j) s += ", ";
                s += at(i, j).str();
            }
            s += "]";
        }
        return s + "]";
    }

  private:
    unsigned n_;
    std::vector<CycNum> m_;
};

inline SL2Coords op3_apply(const Op3& op, const SL2Coords& x) {
    unsigned N = op.conductor();
    auto row = [&](int i) {
        MPoly r = x.a * op.at(i, 0);
        r = r + x.b * op.at(i, 1);
        r = r + x.c * op.at(i, 2);
        return r;
    };
    (void)N;
    return SL2Coords{row(0), row(1), row(2)};
}

inline Op3 op3_inverse(const Op3& op) {
    unsigned N = op.conductor();
    // Gauss-Jordan on [op | I] over the cyclotomic field.
    std::vector<std::vector<CycNum>> w;
    for (int i = 0; i < 3; ++i) {
        std::vector<CycNum> row;
        for (int j = 0; j < 3; ++j) row.push_back(op.at(i, j));
        for (int j = 0; j < 3; ++j)
            row.push_back(i == j ? CycNum::from_rat(N, rat(1)) : CycNum(N));
        w.push_back(std::move(row));
    }
    for (int col = 0; col < 3; ++col) {
        int piv = -1;
        for (int r = col; r < 3; ++r)
            if (!w[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw Error("op3_inverse: singular operator");
        std::swap(w[static_cast<size_t>(col)], w[static_cast<size_t>(piv)]);
        CycNum d = w[static_cast<size_t>(col)][static_cast<size_t>(col)].inv();
        for (auto& e : w[static_cast<size_t>(col)]) e = d * e;
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            CycNum f = w[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            for (int j = 0; j < 6; ++j)
                w[static_cast<size_t>(r)][static_cast<size_t>(j)] =
                    w[static_cast<size_t>(r)][static_cast<size_t>(j)] -
                    f * w[static_cast<size_t>(col)][static_cast<size_t>(j)];
        }
    }
    Op3 inv(N);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            inv.at(i, j) = w[static_cast<size_t>(i)][static_cast<size_t>(j + 3)];
    return inv;
}

// ---------------------------------------------------------------------------
// C22: 2x2 matrix with cyclotomic entries, used for the projective group
// generators and for conjugating the action by a change of basis.
// ---------------------------------------------------------------------------
struct C22 {
    CycNum a, b, c, d;

    unsigned conductor() const { return a.conductor(); }

    friend C22 operator*(const C22& x, const C22& y) {
        return C22{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                   x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

inline C22 c22_identity(unsigned N) {
    CycNum one = CycNum::from_rat(N, rat(1));
    return C22{one, CycNum(N), CycNum(N), one};
}

inline C22 c22_inverse(const C22& m) {
    CycNum det = m.a * m.d - m.b * m.c;
    if (det.is_zero()) throw Error("c22_inverse: singular matrix");
    CycNum di = det.inv();
    return C22{di * m.d, -(di * m.b), -(di * m.c), di * m.a};
}

// Random invertible matrix with Gaussian rational entries inside
// Q(zeta_M), for basis-change experiments.  Needs 4 | M so that i exists.
template <class Rng>
C22 random_invertible_c22(unsigned M, Rng& rng) {
    if (M % 4 != 0) throw GroupError("random_invertible_c22 needs 4 | conductor");
    std::uniform_int_distribution<int> d(-3, 3);
    CycNum i4 = CycNum::zeta(M, M / 4);
    auto entry = [&]() { return CycNum::from_rat(M, rat(d(rng))) + rat(d(rng)) * i4; };
    for (;;) {
        C22 b{entry(), entry(), entry(), entry()};
        if (!(b.a * b.d - b.b * b.c).is_zero()) return b;
    }
}

// The adjoint action of an invertible 2x2 matrix on sl2, as an operator on
// coordinates.  Conjugates each basis element and reads the result back off
// the matrix entries ([[p,q],[r,-p]] has coordinates (p,q,r)).
inline Op3 adjoint_of_pgl2(const C22& m) {
    unsigned N = m.conductor();
    C22 mi = c22_inverse(m);
    Op3 op(N);
    for (int k = 0; k < 3; ++k) {
        // basis element v_k as a 2x2 matrix
        CycNum one = CycNum::from_rat(N, rat(1));
        C22 v{CycNum(N), CycNum(N), CycNum(N), CycNum(N)};
        if (k == 0) {
            v.a = one;
            v.d = -one;
        } else if (k == 1) {
            v.b = one;
        } else {
            v.c = one;
        }
        C22 w = m * v * mi;
        if (!(w.a + w.d).is_zero()) throw Error("adjoint_of_pgl2: conjugate not traceless");
        op.at(0, k) = w.a;
        op.at(1, k) = w.b;
        op.at(2, k) = w.c;
    }
    return op;
}

// ---------------------------------------------------------------------------
// Group specification and parsing.
// ---------------------------------------------------------------------------
enum class GroupKind { Cyclic, Dihedral, Tetra, Octa, Icosa };

struct GroupSpec {
    GroupKind kind;
    unsigned n;         // cyclic/dihedral parameter; 0 for the polyhedral groups
    unsigned conductor; // ground field is Q(zeta_conductor)

    unsigned order() const {
        switch (kind) {
            case GroupKind::Cyclic: return n;
            case GroupKind::Dihedral: return 2 * n;
            case GroupKind::Tetra: return 12;
            case GroupKind::Octa: return 24;
            case GroupKind::Icosa: return 60;
        }
        throw Error("order: bad kind");
    }

    std::string str() const {
        switch (kind) {
            case GroupKind::Cyclic: return "Zn:" + std::to_string(n);
            case GroupKind::Dihedral: return "Dn:" + std::to_string(n);
            case GroupKind::Tetra: return "A4";
            case GroupKind::Octa: return "S4";
            case GroupKind::Icosa: return "A5";
        }
        throw Error("str: bad kind");
    }
};

inline unsigned default_conductor(GroupKind kind, unsigned n) {
    switch (kind) {
        case GroupKind::Cyclic:
        case GroupKind::Dihedral: return n;
        case GroupKind::Tetra: return 4;
        case GroupKind::Octa: return 8;
        case GroupKind::Icosa: return 20;
    }
    throw Error("default_conductor: bad kind");
}

inline GroupSpec make_group(GroupKind kind, unsigned n = 0) {
    if (kind == GroupKind::Cyclic && n < 1) throw GroupError("cyclic group needs n >= 1");
    if (kind == GroupKind::Dihedral && n < 3) throw GroupError("dihedral group needs n >= 3");
    if (kind != GroupKind::Cyclic && kind != GroupKind::Dihedral) n = 0;
    return GroupSpec{kind, n, default_conductor(kind, n)};
}

// Enlarge the ground field; M must be a multiple of the current conductor.
inline GroupSpec with_conductor(const GroupSpec& g, unsigned M) {
    if (M == 0 || M % g.conductor != 0) throw GroupError("with_conductor: not a multiple");
    GroupSpec r = g;
    r.conductor = M;
    return r;
}

inline GroupSpec parse_group(const std::string& s) {
    auto tail_num = [&](size_t off) -> unsigned {
        if (off >= s.size()) throw GroupError("group '" + s + "': missing parameter");
        unsigned v = 0;
        for (size_t i = off; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw GroupError("group '" + s + "': bad parameter");
            v = 10 * v + static_cast<unsigned>(s[i] - '0');
            if (v > 1000000) throw GroupError("group '" + s + "': parameter too large");
        }
        return v;
    };
    if (s.rfind("Zn:", 0) == 0) return make_group(GroupKind::Cyclic, tail_num(3));
    if (s.rfind("Dn:", 0) == 0) return make_group(GroupKind::Dihedral, tail_num(3));
    if (s == "A4") return make_group(GroupKind::Tetra);
    if (s == "S4") return make_group(GroupKind::Octa);
    if (s == "A5") return make_group(GroupKind::Icosa);
    throw GroupError("unknown group '" + s + "' (expected Zn:<n>, Dn:<n>, A4, S4, A5)");
}

// ---------------------------------------------------------------------------
// 2x2 projective generators.  Entries live in Q(zeta_conductor).
// ---------------------------------------------------------------------------
inline std::vector<C22> pgl2_generators(const GroupSpec& g) {
    unsigned N = g.conductor;
    CycNum one = CycNum::from_rat(N, rat(1));
    CycNum zero(N);
    CycNum half = CycNum::from_rat(N, rat(1, 2));
    std::vector<C22> out;
    switch (g.kind) {
        case GroupKind::Cyclic: {
            out.push_back(C22{one, zero, zero, cyc_embed(g.n, 1, N)});
            break;
        }
        case GroupKind::Dihedral: {
            out.push_back(C22{one, zero, zero, cyc_embed(g.n, 1, N)});
            out.push_back(C22{zero, one, one, zero});
            break;
        }
        case GroupKind::Tetra:
        case GroupKind::Octa: {
            CycNum i = cyc_embed(4, 1, N);
            out.push_back(C22{i, zero, zero, -i});
            out.push_back(C22{half * (one - i), half * (one + i),
                              half * (i - one), half * (one + i)});
            if (g.kind == GroupKind::Octa) out.push_back(C22{one, zero, zero, i});
            break;
        }
        case GroupKind::Icosa: {
            CycNum e1 = cyc_embed(5, 1, N);
            CycNum e2 = cyc_embed(5, 2, N);
            CycNum e3 = cyc_embed(5, 3, N);
            CycNum e4 = cyc_embed(5, 4, N);
            CycNum root5 = e1 - e2 - e3 + e4; // Gauss sum, squares to 5
            CycNum ri = root5.inv();
            CycNum A = e1 - e4, B = e2 - e3;
            out.push_back(C22{e3, zero, zero, e2});
            out.push_back(C22{ri * A, ri * B, ri * B, -(ri * A)});
            break;
        }
    }
    return out;
}

inline std::vector<Op3> action_generators(const GroupSpec& g) {
    std::vector<Op3> out;
    for (const auto& m : pgl2_generators(g)) out.push_back(adjoint_of_pgl2(m));
    return out;
}

// Same group realized through a changed basis: each generator m becomes
// B m B^{-1} before taking adjoints.
inline std::vector<Op3> conjugated_action_generators(const GroupSpec& g, const C22& basis) {
    C22 bi = c22_inverse(basis);
    std::vector<Op3> out;
    for (const auto& m : pgl2_generators(g)) out.push_back(adjoint_of_pgl2(basis * m * bi));
    return out;
}

// Closure of the generators under composition.  The adjoint already kills
// scalar matrices, so this enumerates the projective group exactly.
inline std::vector<Op3> op3_closure(const std::vector<Op3>& gens, size_t cap = 4096) {
    if (gens.empty()) throw GroupError("op3_closure: no generators");
    unsigned N = gens.front().conductor();
    std::vector<Op3> elems;
    elems.push_back(Op3::identity(N));
    size_t scan = 0;
    while (scan < elems.size()) {
        Op3 cur = elems[scan++];
        for (const auto& gen : gens) {
            Op3 next = cur * gen;
            bool known = false;
            for (const auto& e : elems)
                if (e == next) {
                    known = true;
                    break;
                }
            if (!known) {
                elems.push_back(next);
                if (elems.size() > cap) throw GroupError("op3_closure: cap exceeded");
            }
        }
    }
    return elems;
}

inline std::vector<Op3> group_elements(const GroupSpec& g) {
    size_t cap = std::max<size_t>(512, 4 * static_cast<size_t>(g.order()) + 16);
    auto elems = op3_closure(action_generators(g), cap);
    if (elems.size() != g.order())
        throw GroupError("group " + g.str() + ": closure size " +
                         std::to_string(elems.size()) + ", expected " +
                         std::to_string(g.order()));
    return elems;
}

// ---------------------------------------------------------------------------
// Cyclic/dihedral element labels: h^eps g^j with the relation h g h = g^{-1}.
// ---------------------------------------------------------------------------
struct GAElem {
    bool h;     // reflection part
    long j;     // rotation exponent mod n
    unsigned n; // cyclic order

    static GAElem id(unsigned n) { return GAElem{false, 0, n}; }
};

inline long mod_norm(long v, unsigned n) {
    long m = static_cast<long>(n);
    long r = v % m;
    return r < 0 ? r + m : r;
}

// Composition matching operator composition: (x*y)(v) = x(y(v)).
inline GAElem ga_mul(const GAElem& x, const GAElem& y) {
    if (x.n != y.n) throw Error("ga_mul: mixed groups");
    // h^a g^j h^b g^k = h^(a xor b) g^(k - j) when b = 1, else h^a g^(j + k)
    long jj = y.h ? mod_norm(y.j - x.j, x.n) : mod_norm(x.j + y.j, x.n);
    return GAElem{x.h != y.h, jj, x.n};
}

// ---------------------------------------------------------------------------
// Canonical operators.  g rotates (a,b,c) -> (a, w^-1 b, w c) and h swaps
// (a,b,c) -> (-a, c, b); e_i is the averaged projection onto the w^i
// eigenspace of g.
// ---------------------------------------------------------------------------
inline Op3 g_op(unsigned N, unsigned n) {
    Op3 r(N);
    r.at(0, 0) = CycNum::from_rat(N, rat(1));
    r.at(1, 1) = cyc_embed(n, -1, N);
    r.at(2, 2) = cyc_embed(n, 1, N);
    return r;
}

inline Op3 h_op(unsigned N) {
    Op3 r(N);
    r.at(0, 0) = -CycNum::from_rat(N, rat(1));
    r.at(1, 2) = CycNum::from_rat(N, rat(1));
    r.at(2, 1) = CycNum::from_rat(N, rat(1));
    return r;
}

inline Op3 ga_realize(const GAElem& e, unsigned N) {
    Op3 r = Op3::identity(N);
    Op3 g = g_op(N, e.n);
    for (long t = 0; t < mod_norm(e.j, e.n); ++t) r = r * g;
    if (e.h) r = h_op(N) * r;
    return r;
}

// e_i = (1/n) sum_t w^{-it} g^t.  Diagonal; vanishes unless i is congruent
// to 0, 1 or -1 mod n, and for n <= 2 the surviving projections merge.
inline Op3 idempotent_op(unsigned N, unsigned n, long i) {
    if (n == 0 || N % n != 0) throw GroupError("idempotent_op: conductor not a multiple of n");
    Op3 acc(N);
    Op3 gp = Op3::identity(N);
    Op3 g = g_op(N, n);
    for (unsigned t = 0; t < n; ++t) {
        CycNum w = cyc_embed(n, -i * static_cast<long>(t), N);
        acc = acc + w * gp;
        gp = gp * g;
    }
    CycNum inv_n = CycNum::from_rat(N, rat(1, static_cast<long>(n)));
    return inv_n * acc;
}

inline Op3 h_idempotent_op(unsigned N, unsigned n, long i) {
    return h_op(N) * idempotent_op(N, n, i);
}

// eps_ij sends v_j to v_i and kills the other basis elements.
inline Op3 epsilon_op(unsigned N, int i, int j) {
    if (i < 1 || i > 3 || j < 1 || j > 3) throw Error("epsilon_op: indices in 1..3");
    Op3 r(N);
    r.at(i - 1, j - 1) = CycNum::from_rat(N, rat(1));
    return r;
}

// ---------------------------------------------------------------------------
// Irreducibility: the operators span all of End(sl2) and the commutant is
// the scalars.  Returns {algebra dimension, commutant dimension}.
// ---------------------------------------------------------------------------
namespace detail {

// Dense row echelon accumulator over the cyclotomic field.
class Echelon9 {
  public:
    explicit Echelon9(size_t width) : width_(width) {}

    size_t rank() const { return rows_.size(); }

    // Reduces v against the basis; inserts the remainder if nonzero.
    // Returns true when the vector enlarged the span.  Rows stay sorted by
    // pivot so one reduction pass suffices.
    bool insert(std::vector<CycNum> v) {
        for (const auto& row : rows_) {
            if (v[row.pivot].is_zero()) continue;
            CycNum f = v[row.pivot];
            for (size_t k = row.pivot; k < width_; ++k) v[k] = v[k] - f * row.v[k];
        }
        size_t p = width_;
        for (size_t k = 0; k < width_; ++k)
            if (!v[k].is_zero()) {
                p = k;
                break;
            }
        if (p == width_) return false;
        CycNum d = v[p].inv();
        for (size_t k = p; k < width_; ++k) v[k] = d * v[k];
        auto it = rows_.begin();
        while (it != rows_.end() && it->pivot < p) ++it;
        rows_.insert(it, Row{p, std::move(v)});
        return true;
    }

  private:
    struct Row {
        size_t pivot;
        std::vector<CycNum> v;
    };
    size_t width_;
    std::vector<Row> rows_;
};

inline std::vector<CycNum> op3_flat(const Op3& m) {
    std::vector<CycNum> v;
    v.reserve(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v.push_back(m.at(i, j));
    return v;
}

} // namespace detail

struct IrreducibilityReport {
    size_t algebra_dim;
    size_t commutant_dim;
};

inline IrreducibilityReport check_irreducible(const std::vector<Op3>& gens) {
    if (gens.empty()) throw Error("check_irreducible: no operators");
    unsigned N = gens.front().conductor();

    // Unital algebra closure inside End(sl2): grow a basis, then keep
    // multiplying basis elements pairwise until nothing new appears.
    std::vector<Op3> basis;
    detail::Echelon9 ech(9);
    auto add = [&](const Op3& m) {
        if (ech.insert(detail::op3_flat(m))) basis.push_back(m);
    };
    add(Op3::identity(N));
    for (const auto& g : gens) add(g);
    size_t fresh = 0;
    while (fresh < basis.size()) {
        size_t upto = basis.size();
        for (size_t i = fresh; i < upto; ++i)
            for (size_t j = 0; j < upto && basis.size() < 9; ++j) {
                add(basis[i] * basis[j]);
                if (j < fresh) add(basis[j] * basis[i]);
            }
        fresh = upto;
        if (basis.size() >= 9) break;
    }
    size_t alg_dim = ech.rank();

    // Commutant: X with XM = MX for every basis element M.  Each M yields
    // nine linear conditions on the nine entries of X.
    detail::Echelon9 cm(9);
    for (const auto& m : basis) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                // entry (i,j) of XM - MX as a function of X's entries
                std::vector<CycNum> row;
                row.reserve(9);
                for (int p = 0; p < 3; ++p)
                    for (int q = 0; q < 3; ++q) {
                        CycNum coef(N);
                        if (p == i) coef = coef + m.at(q, j);
                        if (q == j) coef = coef - m.at(i, p);
                        row.push_back(coef);
                    }
                cm.insert(std::move(row));
            }
    }
    return IrreducibilityReport{alg_dim, 9 - cm.rank()};
}

} // namespace weakid
