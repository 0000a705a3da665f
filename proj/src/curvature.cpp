#include "affine4/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace affine4 {

Mat2 shape_operator(double alpha, double beta, const ShapeData& sd) {
    if (alpha == 0.0 && beta == 0.0) throw ZeroVector("shape_operator needs (alpha, beta) != 0");
    return alpha * sd.S1 + beta * sd.S2;
}

double NormalCurvature::max_abs() const {
    return std::max({std::abs(r_xi1[0]), std::abs(r_xi1[1]), std::abs(r_xi2[0]), std::abs(r_xi2[1])});
}

NormalCurvature normal_curvature(const ShapeData& sd, double b, double c) {
    NormalCurvature r;
    r.r_xi1 = {(sd.l4() - sd.l1()) * b - sd.l2() * c, sd.l3() - sd.l2()};
    r.r_xi2 = {(sd.m4() - sd.m1()) * b - sd.m2() * c, sd.m3() - sd.m2()};
    return r;
}

NormalCurvature normal_curvature_direct(const ShapeData& sd, double b, double c,
                                        const std::array<double, 2>& x, const std::array<double, 2>& y) {
    // h(X, Y) in (xi1, xi2) coordinates with h^1 = [[0,b],[b,c]], h^2 = I
    auto h = [&](const std::array<double, 2>& p, const std::array<double, 2>& q) -> std::array<double, 2> {
        const double h1 = b * (p[0] * q[1] + p[1] * q[0]) + c * p[1] * q[1];
        const double h2 = p[0] * q[0] + p[1] * q[1];
        return {h1, h2};
    };
    auto apply = [](const Mat2& s, const std::array<double, 2>& p) -> std::array<double, 2> {
        return {s.m00 * p[0] + s.m01 * p[1], s.m10 * p[0] + s.m11 * p[1]};
    };
    auto commutator = [&](const Mat2& s) -> std::array<double, 2> {
        const auto hx = h(x, apply(s, y));
        const auto hy = h(y, apply(s, x));
        return {hx[0] - hy[0], hx[1] - hy[1]};
    };
    NormalCurvature r;
    r.r_xi1 = commutator(sd.S1);
    r.r_xi2 = commutator(sd.S2);
    return r;
}

SemiumbilicResult semiumbilic_test(const ShapeData& sd) {
    const double rows[3][2] = {{sd.l2(), sd.m2()}, {sd.l3(), sd.m3()}, {sd.l1() - sd.l4(), sd.m1() - sd.m4()}};
    double row_max = 0.0;
    for (const auto& row : rows) row_max = std::max({row_max, std::abs(row[0]), std::abs(row[1])});
    // entries live in the normalized frame, so they are O(1)-scaled; below
    // the floor a row is numerically indistinguishable from zero and a pure
    // noise/noise^2 ratio would misclassify S ~ 0
    const double opnorm = 1.0 + sd.S1.max_abs() + sd.S2.max_abs();
    const double scale = row_max + 1e-7 * opnorm;

    SemiumbilicResult out;
    const double m01 = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
    const double m02 = rows[0][0] * rows[2][1] - rows[0][1] * rows[2][0];
    const double m12 = rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0];
    const double max_minor = std::max({std::abs(m01), std::abs(m02), std::abs(m12)});
    out.minor_norm = max_minor / (scale * scale);
    out.semiumbilic = max_minor <= 1e-9 * scale * scale;
    if (!out.semiumbilic) return out;

    if (row_max <= 1e-8 * opnorm) {
        // both operators already multiples of the identity
        out.directions.push_back(HomPair{1.0, 0.0});
        out.directions.push_back(HomPair{0.0, 1.0});
        return out;
    }
    // (alpha, beta) is orthogonal to every row; use the largest one
    int best = 0;
    double best_norm = -1.0;
    for (int i = 0; i < 3; ++i) {
        const double n = rows[i][0] * rows[i][0] + rows[i][1] * rows[i][1];
        if (n > best_norm) {
            best_norm = n;
            best = i;
        }
    }
    out.directions.push_back(HomPair::normalized(-rows[best][1], rows[best][0]));
    return out;
}

FlatNormalReport flat_normal_check(const ShapeData& sd, double b, double c) {
    constexpr double kTol = 1e-8;

    FlatNormalReport rep;
    const NormalCurvature r = normal_curvature(sd, b, c);
    const double scale = 1.0 + sd.S1.max_abs() + sd.S2.max_abs();
    rep.r_norm = r.max_abs();
    rep.lhs = rep.r_norm <= kTol * scale;

    rep.self_adjoint =
        std::abs(sd.l2() - sd.l3()) <= kTol * scale && std::abs(sd.m2() - sd.m3()) <= kTol * scale;
    rep.inflection = 4.0 * b * b + c * c <= 1e-10;

    const SemiumbilicResult semi = semiumbilic_test(sd);
    rep.semiumbilic = semi.semiumbilic;

    // asymptotic form -b x^2 - c xy + b y^2 vs the nu-principal form
    // -(s_off) x^2 - (s_diag) xy + (s_off) y^2 for nu = xi1, xi2; both are
    // proportional iff the normalized coefficient vectors are parallel.
    auto config_residual = [&](double off, double diag) -> double {
        const double p[3] = {-off, -diag, off};
        const double q[3] = {-b, -c, b};
        const double np = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        const double nq = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
        if (np == 0.0 || nq == 0.0) return 0.0;
        const double cx = p[1] * q[2] - p[2] * q[1];
        const double cy = p[2] * q[0] - p[0] * q[2];
        const double cz = p[0] * q[1] - p[1] * q[0];
        return std::sqrt(cx * cx + cy * cy + cz * cz) / (np * nq);
    };
    // symmetrized off-diagonal so self-adjointness failures do not leak in
    const double r1 = config_residual(0.5 * (sd.l2() + sd.l3()), sd.l4() - sd.l1());
    const double r2 = config_residual(0.5 * (sd.m2() + sd.m3()), sd.m4() - sd.m1());
    rep.config_residual = std::max(r1, r2);
    rep.configs_agree = rep.config_residual <= kTol;

    rep.rhs = rep.self_adjoint && (rep.inflection || (rep.semiumbilic && rep.configs_agree));
    return rep;
}

}  // namespace affine4
