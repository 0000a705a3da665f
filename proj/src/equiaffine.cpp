#include "affine4/equiaffine.hpp"

#include <algorithm>
#include <cmath>

namespace affine4 {

namespace {

double inflection_measure(const ConnectionData& cd) { return 4.0 * cd.b * cd.b + cd.c * cd.c; }

}  // namespace

CorrectionCoeffs antisymmetric_correction(const ConnectionData& cd) {
    const double den = inflection_measure(cd);
    if (!(den > 1e-10)) throw InflectionPoint("antisymmetric plane undefined at an inflection");
    const auto& a = cd.a;
    const double p = a[1] + a[2] + a[4] - a[7];  // a2 + a3 + a5 - a8
    const double q = a[3] + a[5] + a[6] - a[0];  // a4 + a6 + a7 - a1
    CorrectionCoeffs z;
    z.a = (-2.0 * p * cd.b - q * cd.c) / den;
    z.b = (-2.0 * q * cd.b + p * cd.c) / den;
    z.c = -(a[0] + a[3] + z.b * cd.b);
    z.d = -(a[4] + a[7] + z.a * cd.b + z.b * cd.c);
    return z;
}

CorrectionCoeffs symmetric_correction(const ConnectionData& cd) {
    const double den = inflection_measure(cd);
    if (!(den > 1e-10)) throw InflectionPoint("symmetric plane undefined at an inflection");
    const auto& a = cd.a;
    const double p = a[1] + a[2] - 3.0 * a[4] - a[7];  // a2 + a3 - 3 a5 - a8
    const double q = a[5] + a[6] - a[0] - 3.0 * a[3];  // a6 + a7 - a1 - 3 a4
    CorrectionCoeffs z;
    z.a = (2.0 * p * cd.b - q * cd.c) / den;
    z.b = (2.0 * q * cd.b + p * cd.c) / den;
    z.c = -(a[0] + a[3] + z.b * cd.b);
    z.d = -(a[4] + a[7] + z.a * cd.b + z.b * cd.c);
    return z;
}

PlaneAtPoint apply_correction(const FramePoint& fp, const CorrectionCoeffs& z) {
    const Vec4 x1 = value_of(fp.X1.vec), x2 = value_of(fp.X2.vec);
    const Vec4 n1 = value_of(fp.xi1), n2 = value_of(fp.xi2);
    PlaneAtPoint p;
    for (int i = 0; i < 4; ++i) {
        p.b1[i] = n1[i] - z.a * x1[i] - z.b * x2[i];
        p.b2[i] = n2[i] - z.c * x1[i] - z.d * x2[i];
    }
    return p;
}

PlaneAtPoint antisymmetric_plane(const ConnectionData& cd, const FramePoint& fp) {
    return apply_correction(fp, antisymmetric_correction(cd));
}

PlaneAtPoint symmetric_plane(const ConnectionData& cd, const FramePoint& fp) {
    return apply_correction(fp, symmetric_correction(cd));
}

std::array<double, 8> transform_connection(const ConnectionData& cd, const CorrectionCoeffs& z) {
    // h^1 = [[0, b], [b, c]], h^2 = identity in the distinguished frame
    std::array<double, 8> a = cd.a;
    a[0] += z.c;
    a[1] += z.d;
    a[2] += cd.b * z.a;
    a[3] += cd.b * z.b;
    a[4] += cd.b * z.a;
    a[5] += cd.b * z.b;
    a[6] += cd.c * z.a + z.c;
    a[7] += cd.c * z.b + z.d;
    return a;
}

namespace {

// Euclidean-orthonormal basis of the plane.
std::array<Vec4, 2> orthonormal_basis(const PlaneAtPoint& p) {
    Vec4 u = p.b1;
    const double nu = norm(u);
    for (int i = 0; i < 4; ++i) u[i] /= nu;
    Vec4 w = p.b2;
    const double d = dot(w, u);
    for (int i = 0; i < 4; ++i) w[i] -= d * u[i];
    const double nw = norm(w);
    for (int i = 0; i < 4; ++i) w[i] /= nw;
    return {u, w};
}

}  // namespace

double plane_compare(const PlaneAtPoint& p, const PlaneAtPoint& q) {
    const auto up = orthonormal_basis(p);
    const auto uq = orthonormal_basis(q);
    // cosines: singular values of M = Up^T Uq
    const Mat2 m{dot(up[0], uq[0]), dot(up[0], uq[1]), dot(up[1], uq[0]), dot(up[1], uq[1])};
    const Mat2Sym mtm{m.m00 * m.m00 + m.m10 * m.m10, m.m00 * m.m01 + m.m10 * m.m11,
                      m.m01 * m.m01 + m.m11 * m.m11};
    const double cos_min = std::sqrt(std::clamp(mtm.eigenvalues()[0], 0.0, 1.0));
    // sines: singular values of the residual Up - Uq (Uq^T Up), accurate for
    // nearly identical planes where the cosines saturate at 1
    Vec4 r[2];
    for (int k = 0; k < 2; ++k) {
        const double c0 = dot(uq[0], up[k]);
        const double c1 = dot(uq[1], up[k]);
        for (int i = 0; i < 4; ++i) r[k][i] = up[k][i] - c0 * uq[0][i] - c1 * uq[1][i];
    }
    const Mat2Sym rtr{dot(r[0], r[0]), dot(r[0], r[1]), dot(r[1], r[1])};
    const double sin_max = std::sqrt(std::clamp(rtr.eigenvalues()[1], 0.0, 1.0));
    return std::atan2(sin_max, cos_min);
}

double contains_direction(const PlaneAtPoint& p, const Vec4& y) {
    const double ny = norm(y);
    if (ny == 0.0) throw ZeroVector("contains_direction needs a nonzero direction");
    Vec4 w;
    for (int i = 0; i < 4; ++i) w[i] = y[i] / ny;
    const auto basis = orthonormal_basis(p);
    for (const Vec4& b : basis) {
        const double d = dot(w, b);
        for (int i = 0; i < 4; ++i) w[i] -= d * b[i];
    }
    return norm(w);
}

}  // namespace affine4
