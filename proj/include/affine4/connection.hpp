#pragma once

#include "affine4/frames.hpp"

namespace affine4 {

/// Coefficients of the decomposition along the distinguished frame:
/// nabla_{X_i} X_j in (a1..a8), h^1 entries (b, c), tau-forms and the
/// shape operators S_1, S_2 (column j holds the (X_1, X_2) coordinates
/// of S X_j).
struct ConnectionData {
    std::array<double, 8> a{};
    double b = 0, c = 0;
    // tau[j][k][i] = tau_{j+1}^{k+1}(X_{i+1})
    double tau[2][2][2] = {};
    Mat2 S1, S2;
    double h1_11 = 0;             // should be ~0
    std::array<double, 3> h2{};   // should be ~(1, 0, 1)
};

/// w = t1 X1 + t2 X2 + n1 xi1 + n2 xi2; residual <= 1e-11 |w| for a sane
/// frame. Throws SingularSystem for degenerate frames.
std::array<double, 4> frame_decompose(const Vec4& w, const Vec4& X1, const Vec4& X2, const Vec4& xi1,
                                      const Vec4& xi2);

ConnectionData connection_data(const FramePoint& fp);

/// B, C, D combinations of nabla g in the orthonormal frame.
struct NablaGQuantities {
    double B1 = 0, B2 = 0, C1 = 0, C2 = 0, D1 = 0, D2 = 0;
    double max_equiaffine() const { return std::max(std::abs(B1), std::abs(B2)); }
};

/// Closed forms: B1 = -2(a1+a4), B2 = -2(a5+a8), C1 = -2a5-a2-a3,
/// C2 = -2a4-a6-a7, D1 = -2a5+a2+a3, D2 = -2a4+a6+a7.
NablaGQuantities nabla_g_quantities(const ConnectionData& cd);

/// Direct evaluation of the six (nabla g) sums from their definition
/// (nabla g)(X,Y,Z) = X(g(Y,Z)) - g(nabla_X Y, Z) - g(Y, nabla_X Z),
/// with explicit g and the directional-derivative terms supplied by the
/// caller (zero in an orthonormal frame). Test oracle for the closed forms.
NablaGQuantities nabla_g_direct(const std::array<double, 8>& a, const Mat2Sym& g,
                                const double dg[2][3]);

/// Coordinates of the Lie bracket [X1, X2] in the coordinate frame, from
/// the jet coefficients; torsion-freeness test oracle.
std::array<double, 2> lie_bracket_coords(const FramePoint& fp);

}  // namespace affine4
