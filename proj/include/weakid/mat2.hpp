#pragma once

#include "weakid/mpoly.hpp"

namespace weakid {

// 2x2 matrix over the polynomial ring; hosts every evaluation image.
struct Mat2 {
    MPoly m11, m12, m21, m22;

    explicit Mat2(unsigned N) : m11(N), m12(N), m21(N), m22(N) {}
    Mat2(MPoly a, MPoly b, MPoly c, MPoly d)
        : m11(std::move(a)), m12(std::move(b)), m21(std::move(c)), m22(std::move(d)) {}

    unsigned conductor() const { return m11.conductor(); }
    MPoly trace() const { return m11 + m22; }
};

inline Mat2 mat_zero(unsigned N) { return Mat2(N); }

inline Mat2 mat_identity(unsigned N) {
    Mat2 r(N);
    r.m11 = MPoly::from_rat(N, rat(1));
    r.m22 = MPoly::from_rat(N, rat(1));
    return r;
}

inline Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.m11 + y.m11, x.m12 + y.m12, x.m21 + y.m21, x.m22 + y.m22};
}

inline Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.m11 - y.m11, x.m12 - y.m12, x.m21 - y.m21, x.m22 - y.m22};
}

inline Mat2 mat_mul(const Mat2& x, const Mat2& y) {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
}

inline Mat2 operator*(const CycNum& s, const Mat2& x) {
    return {s * x.m11, s * x.m12, s * x.m21, s * x.m22};
}

inline Mat2 commutator(const Mat2& x, const Mat2& y) {
    return mat_mul(x, y) - mat_mul(y, x);
}

inline bool is_zero_mat(const Mat2& x) {
    return x.m11.is_zero() && x.m12.is_zero() && x.m21.is_zero() && x.m22.is_zero();
}

inline bool operator==(const Mat2& x, const Mat2& y) { return is_zero_mat(x - y); }
inline bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

inline std::string mat_str(const Mat2& x) {
    return "[[" + x.m11.str() + ", " + x.m12.str() + "], [" + x.m21.str() + ", " + x.m22.str() +
           "]]";
}

// Coordinates in the basis v1 = e11 - e22, v2 = e12, v3 = e21 of sl2.
struct SL2Coords {
    MPoly a, b, c;

    explicit SL2Coords(unsigned N) : a(N), b(N), c(N) {}
    SL2Coords(MPoly a_, MPoly b_, MPoly c_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}

    unsigned conductor() const { return a.conductor(); }
};

inline Mat2 to_mat2(const SL2Coords& v) { return {v.a, v.b, v.c, -v.a}; }

inline SL2Coords from_mat2(const Mat2& x) {
    if (!x.trace().is_zero()) throw Error("from_mat2 requires a traceless matrix");
    return {x.m11, x.m12, x.m21};
}

// s_i = [[a_i, b_i], [c_i, -a_i]]
inline SL2Coords generic_coords(unsigned N, unsigned i) {
    if (i == 0) throw Error("generic matrix index must be >= 1");
    return {MPoly::variable(N, var_a(i)), MPoly::variable(N, var_b(i)),
            MPoly::variable(N, var_c(i))};
}

inline Mat2 generic_matrix(unsigned N, unsigned i) { return to_mat2(generic_coords(N, i)); }

}  // namespace weakid
