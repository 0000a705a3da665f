#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "affine4/errors.hpp"
#include "affine4/jet.hpp"

namespace affine4 {

/// Column vector in affine 4-space, generic over the scalar (double for
/// point values, Jet3 for fields along a surface).
template <class T>
struct Vec4T {
    std::array<T, 4> c{};

    T& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    const T& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    Vec4T operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }
    friend Vec4T operator+(const Vec4T& a, const Vec4T& b) {
        return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]};
    }
    friend Vec4T operator-(const Vec4T& a, const Vec4T& b) {
        return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]};
    }
    template <class S>
    friend Vec4T operator*(const S& s, const Vec4T& a) {
        return {s * a.c[0], s * a.c[1], s * a.c[2], s * a.c[3]};
    }
    template <class S>
    friend Vec4T operator*(const Vec4T& a, const S& s) {
        return s * a;
    }
};

using Vec4 = Vec4T<double>;
using JetVec4 = Vec4T<Jet3>;

inline Vec4 value_of(const JetVec4& v) {
    return {v[0].value(), v[1].value(), v[2].value(), v[3].value()};
}
inline JetVec4 to_jets(const Vec4& v) {
    return {Jet3(v[0]), Jet3(v[1]), Jet3(v[2]), Jet3(v[3])};
}

inline double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline Jet3 dot(const JetVec4& a, const JetVec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

/// 2x2 matrix, row-major; column j is the image of the j-th basis vector.
struct Mat2 {
    double m00 = 0, m01 = 0, m10 = 0, m11 = 0;

    double det() const { return m00 * m11 - m01 * m10; }
    double trace() const { return m00 + m11; }
    double max_abs() const {
        return std::max(std::max(std::abs(m00), std::abs(m01)), std::max(std::abs(m10), std::abs(m11)));
    }
    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
    }
    friend Mat2 operator*(double s, const Mat2& a) { return {s * a.m00, s * a.m01, s * a.m10, s * a.m11}; }
};

/// Symmetric 2x2 matrix stored as (xx, xy, yy).
struct Mat2Sym {
    double xx = 0, xy = 0, yy = 0;

    double det() const { return xx * yy - xy * xy; }
    double trace() const { return xx + yy; }
    double max_abs() const { return std::max(std::max(std::abs(xx), std::abs(yy)), std::abs(xy)); }
    /// Eigenvalues in ascending order (closed form).
    std::array<double, 2> eigenvalues() const {
        const double mid = 0.5 * (xx + yy);
        const double d = std::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
        return {mid - d, mid + d};
    }
    double apply(double a1, double a2, double b1, double b2) const {
        return a1 * (xx * b1 + xy * b2) + a2 * (xy * b1 + yy * b2);
    }
    Mat2 as_mat2() const { return {xx, xy, xy, yy}; }
    friend Mat2Sym operator+(const Mat2Sym& a, const Mat2Sym& b) {
        return {a.xx + b.xx, a.xy + b.xy, a.yy + b.yy};
    }
    friend Mat2Sym operator-(const Mat2Sym& a, const Mat2Sym& b) {
        return {a.xx - b.xx, a.xy - b.xy, a.yy - b.yy};
    }
    friend Mat2Sym operator*(double s, const Mat2Sym& a) { return {s * a.xx, s * a.xy, s * a.yy}; }
};

/// Homogeneous pair (r, s), unit Euclidean length, first nonzero entry
/// positive; never (0, 0).
struct HomPair {
    double r = 1, s = 0;

    static HomPair normalized(double r, double s) {
        const double n = std::sqrt(r * r + s * s);
        if (n == 0.0) throw ZeroVector("HomPair cannot be (0,0)");
        r /= n;
        s /= n;
        const double lead = (r != 0.0) ? r : s;
        if (lead < 0.0) {
            r = -r;
            s = -s;
        }
        return {r, s};
    }
};

/// Determinant of the 4x4 matrix with the given columns (cofactor expansion).
template <class T>
T det4(const Vec4T<T>& c0, const Vec4T<T>& c1, const Vec4T<T>& c2, const Vec4T<T>& c3) {
    auto det3 = [](const T& a0, const T& a1, const T& a2, const T& b0, const T& b1, const T& b2, const T& d0,
                   const T& d1, const T& d2) {
        return a0 * (b1 * d2 - b2 * d1) - b0 * (a1 * d2 - a2 * d1) + d0 * (a1 * b2 - a2 * b1);
    };
    T r = c0[0] * det3(c1[1], c1[2], c1[3], c2[1], c2[2], c2[3], c3[1], c3[2], c3[3]);
    r -= c1[0] * det3(c0[1], c0[2], c0[3], c2[1], c2[2], c2[3], c3[1], c3[2], c3[3]);
    r += c2[0] * det3(c0[1], c0[2], c0[3], c1[1], c1[2], c1[3], c3[1], c3[2], c3[3]);
    r -= c3[0] * det3(c0[1], c0[2], c0[3], c1[1], c1[2], c1[3], c2[1], c2[2], c2[3]);
    return r;
}

/// Gaussian elimination with partial pivoting for n <= 4.
/// Singularity test is scale-free: |det A| <= 1e-13 * prod_i max_j |A_ij|.
template <class T>
std::array<T, 4> solve_small(int n, std::array<std::array<T, 4>, 4> a, std::array<T, 4> b) {
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        double row_max = 0.0;
        for (int j = 0; j < n; ++j) row_max = std::max(row_max, value_abs(a[i][j]));
        scale *= row_max;
    }
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        for (int i = k + 1; i < n; ++i)
            if (value_abs(a[i][k]) > value_abs(a[pivot][k])) pivot = i;
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            std::swap(b[pivot], b[k]);
            det = -det;
        }
        det *= value_of(a[k][k]);
        if (value_abs(a[k][k]) == 0.0) break;
        for (int i = k + 1; i < n; ++i) {
            T f = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] = a[i][j] - f * a[k][j];
            b[i] = b[i] - f * b[k];
        }
    }
    if (!(std::abs(det) > 1e-13 * scale)) throw SingularSystem("singular linear system");
    std::array<T, 4> x{};
    for (int i = n - 1; i >= 0; --i) {
        T acc = b[i];
        for (int j = i + 1; j < n; ++j) acc = acc - a[i][j] * x[j];
        x[i] = acc / a[i][i];
    }
    return x;
}

/// Roots of det(r A + s B) = 0 over homogeneous (r, s).
struct PencilRoots {
    std::vector<HomPair> roots;  // 0, 1 (double) or 2 entries, ordered by s/r descending
    bool all_pairs = false;      // determinant vanishes identically
    bool double_root = false;
};

PencilRoots pencil_roots(const Mat2Sym& a, const Mat2Sym& b);

/// Kernel direction of a (numerically) singular symmetric 2x2 matrix:
/// rotate the larger-norm row by 90 degrees, HomPair-normalized.
HomPair kernel_direction(const Mat2Sym& m);

}  // namespace affine4
