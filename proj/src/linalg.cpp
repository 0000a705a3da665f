#include "affine4/linalg.hpp"

#include <algorithm>
#include <limits>

namespace affine4 {

namespace {

// Order key for homogeneous roots: s/r descending, r = 0 counts as +infinity.
double branch_key(const HomPair& p) {
    if (p.r == 0.0) return std::numeric_limits<double>::infinity();
    return p.s / p.r;
}

}  // namespace

PencilRoots pencil_roots(const Mat2Sym& a, const Mat2Sym& b) {
    // det(rA + sB) = alpha r^2 + beta r s + gamma s^2
    const double alpha = a.det();
    const double beta = a.xx * b.yy + a.yy * b.xx - 2.0 * a.xy * b.xy;
    const double gamma = b.det();

    const double scale = a.max_abs() + b.max_abs();
    const double tiny = 1e-14 * scale * scale;

    PencilRoots out;
    if (std::abs(alpha) <= tiny && std::abs(beta) <= tiny && std::abs(gamma) <= tiny) {
        out.all_pairs = true;
        return out;
    }
    const double disc = beta * beta - 4.0 * alpha * gamma;
    const double disc_tol = 1e-14 * (beta * beta + 4.0 * std::abs(alpha * gamma));
    if (disc < -disc_tol) {
        return out;  // no real roots
    }
    if (disc <= disc_tol) {
        // double root of the homogeneous quadratic
        if (std::abs(alpha) >= std::abs(gamma)) {
            out.roots.push_back(HomPair::normalized(-beta, 2.0 * alpha));
        } else {
            out.roots.push_back(HomPair::normalized(2.0 * gamma, -beta));
        }
        out.double_root = true;
    } else {
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (beta + (beta >= 0.0 ? sq : -sq));
        // roots of gamma t^2 + beta t + alpha in t = s/r: t1 = q/gamma, t2 = alpha/q
        out.roots.push_back(HomPair::normalized(gamma, q));
        out.roots.push_back(HomPair::normalized(q, alpha));
        // (gamma, q) and (q, alpha) coincide when gamma ~ 0 and alpha ~ 0
        const auto& p = out.roots[0];
        const auto& r2 = out.roots[1];
        if (std::abs(p.r * r2.s - p.s * r2.r) <= 1e-15) {
            out.roots.pop_back();
            out.double_root = true;
        }
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const HomPair& x, const HomPair& y) {
        const double kx = branch_key(x), ky = branch_key(y);
        if (kx != ky) return kx > ky;
        return std::atan2(x.s, x.r) > std::atan2(y.s, y.r);
    });
    return out;
}

HomPair kernel_direction(const Mat2Sym& m) {
    const double n1 = m.xx * m.xx + m.xy * m.xy;
    const double n2 = m.xy * m.xy + m.yy * m.yy;
    if (n1 >= n2) {
        if (n1 == 0.0) return HomPair{1.0, 0.0};
        return HomPair::normalized(m.xy, -m.xx);
    }
    return HomPair::normalized(m.yy, -m.xy);
}

}  // namespace affine4
