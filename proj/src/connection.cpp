#include "affine4/connection.hpp"

namespace affine4 {

std::array<double, 4> frame_decompose(const Vec4& w, const Vec4& X1, const Vec4& X2, const Vec4& xi1,
                                      const Vec4& xi2) {
    std::array<std::array<double, 4>, 4> m;
    for (int i = 0; i < 4; ++i) m[i] = {X1[i], X2[i], xi1[i], xi2[i]};
    return solve_small<double>(4, m, {w[0], w[1], w[2], w[3]});
}

ConnectionData connection_data(const FramePoint& fp) {
    const Vec4 b1 = value_of(fp.X1.vec), b2 = value_of(fp.X2.vec);
    const Vec4 b3 = value_of(fp.xi1), b4 = value_of(fp.xi2);
    auto decompose = [&](const Vec4& w) { return frame_decompose(w, b1, b2, b3, b4); };

    ConnectionData cd;
    const TangentField* frame[2] = {&fp.X1, &fp.X2};

    // D_{X_i} X_j = nabla_{X_i} X_j + h^1(X_i,X_j) xi1 + h^2(X_i,X_j) xi2
    const auto d11 = decompose(value_of(dir_derivative(fp.X1.vec, fp.X1)));
    const auto d12 = decompose(value_of(dir_derivative(fp.X2.vec, fp.X1)));
    const auto d21 = decompose(value_of(dir_derivative(fp.X1.vec, fp.X2)));
    const auto d22 = decompose(value_of(dir_derivative(fp.X2.vec, fp.X2)));
    cd.a = {d11[0], d11[1], d12[0], d12[1], d21[0], d21[1], d22[0], d22[1]};
    cd.h1_11 = d11[2];
    cd.b = 0.5 * (d12[2] + d21[2]);
    cd.c = d22[2];
    cd.h2 = {d11[3], 0.5 * (d12[3] + d21[3]), d22[3]};

    // D_{X_i} xi_j = -S_j X_i + tau_j^1(X_i) xi1 + tau_j^2(X_i) xi2
    for (int i = 0; i < 2; ++i) {
        const auto dxi1 = decompose(value_of(dir_derivative(fp.xi1, *frame[i])));
        const auto dxi2 = decompose(value_of(dir_derivative(fp.xi2, *frame[i])));
        // S_j X_i coordinates fill column i
        if (i == 0) {
            cd.S1.m00 = -dxi1[0];
            cd.S1.m10 = -dxi1[1];
            cd.S2.m00 = -dxi2[0];
            cd.S2.m10 = -dxi2[1];
        } else {
            cd.S1.m01 = -dxi1[0];
            cd.S1.m11 = -dxi1[1];
            cd.S2.m01 = -dxi2[0];
            cd.S2.m11 = -dxi2[1];
        }
        cd.tau[0][0][i] = dxi1[2];
        cd.tau[0][1][i] = dxi1[3];
        cd.tau[1][0][i] = dxi2[2];
        cd.tau[1][1][i] = dxi2[3];
    }
    return cd;
}

NablaGQuantities nabla_g_quantities(const ConnectionData& cd) {
    const auto& a = cd.a;
    NablaGQuantities q;
    q.B1 = -2.0 * (a[0] + a[3]);
    q.B2 = -2.0 * (a[4] + a[7]);
    q.C1 = -2.0 * a[4] - a[1] - a[2];
    q.C2 = -2.0 * a[3] - a[5] - a[6];
    q.D1 = -2.0 * a[4] + a[1] + a[2];
    q.D2 = -2.0 * a[3] + a[5] + a[6];
    return q;
}

NablaGQuantities nabla_g_direct(const std::array<double, 8>& a, const Mat2Sym& g, const double dg[2][3]) {
    // nabla_{X_i} X_j coordinates
    auto nab = [&](int i, int j) -> std::array<double, 2> {
        const int base = 4 * i + 2 * j;
        return {a[static_cast<std::size_t>(base)], a[static_cast<std::size_t>(base + 1)]};
    };
    auto gpair = [&](const std::array<double, 2>& y, const std::array<double, 2>& z) {
        return g.apply(y[0], y[1], z[0], z[1]);
    };
    auto basis = [](int j) -> std::array<double, 2> { return j == 0 ? std::array<double, 2>{1, 0} : std::array<double, 2>{0, 1}; };
    // dg[i][k]: X_i applied to g(..) with k indexing (1,1), (1,2), (2,2)
    auto dgterm = [&](int i, int j, int k) { return dg[i][j + k]; };
    auto nabla_g = [&](int i, int j, int k) {
        return dgterm(i, j, k) - gpair(nab(i, j), basis(k)) - gpair(basis(j), nab(i, k));
    };
    NablaGQuantities q;
    q.B1 = nabla_g(0, 0, 0) + nabla_g(0, 1, 1);
    q.B2 = nabla_g(1, 0, 0) + nabla_g(1, 1, 1);
    q.C1 = nabla_g(1, 0, 0) + nabla_g(0, 1, 0);
    q.C2 = nabla_g(0, 1, 1) + nabla_g(1, 0, 1);
    q.D1 = nabla_g(1, 0, 0) - nabla_g(0, 1, 0);
    q.D2 = nabla_g(0, 1, 1) - nabla_g(1, 0, 1);
    return q;
}

std::array<double, 2> lie_bracket_coords(const FramePoint& fp) {
    auto apply = [&](const TangentField& x, const Jet3& f) {
        return x.a.value() * f.du() + x.b.value() * f.dv();
    };
    return {apply(fp.X1, fp.X2.a) - apply(fp.X2, fp.X1.a), apply(fp.X1, fp.X2.b) - apply(fp.X2, fp.X1.b)};
}

}  // namespace affine4
