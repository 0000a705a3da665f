#pragma once

#include <vector>

#include "affine4/linalg.hpp"

namespace affine4 {

/// Shape operators along the transversal frame: S1 X1 = l1 X1 + l2 X2,
/// S1 X2 = l3 X1 + l4 X2 (column j of the Mat2 holds S X_j), same with
/// m1..m4 for S2.
struct ShapeData {
    Mat2 S1, S2;

    double l1() const { return S1.m00; }
    double l2() const { return S1.m10; }
    double l3() const { return S1.m01; }
    double l4() const { return S1.m11; }
    double m1() const { return S2.m00; }
    double m2() const { return S2.m10; }
    double m3() const { return S2.m01; }
    double m4() const { return S2.m11; }
};

/// alpha S1 + beta S2; throws ZeroVector for (0, 0).
Mat2 shape_operator(double alpha, double beta, const ShapeData& sd);

/// R(X1, X2) xi_i in (xi1, xi2) coordinates, from the displayed expansion:
/// R xi1 = ((l4 - l1) b - l2 c, l3 - l2), R xi2 = ((m4 - m1) b - m2 c, m3 - m2).
struct NormalCurvature {
    std::array<double, 2> r_xi1{};
    std::array<double, 2> r_xi2{};
    double max_abs() const;
};
NormalCurvature normal_curvature(const ShapeData& sd, double b, double c);

/// Direct formula R(X,Y) nu = h(X, S_nu Y) - h(Y, S_nu X) for arbitrary
/// tangent arguments, with h^1 = [[0,b],[b,c]], h^2 = I. Test oracle for
/// the displayed expansion.
NormalCurvature normal_curvature_direct(const ShapeData& sd, double b, double c,
                                        const std::array<double, 2>& x, const std::array<double, 2>& y);

/// Nontrivial (alpha, beta) with alpha S1 + beta S2 = mu Id exists iff the
/// rows (l2, m2), (l3, m3), (l1-l4, m1-m4) have rank <= 1 (all three 2x2
/// minors vanish at tolerance 1e-9 * scale).
struct SemiumbilicResult {
    bool semiumbilic = false;
    std::vector<HomPair> directions;  // (alpha, beta), normalized
    double minor_norm = 0;            // max |minor| / scale
};
SemiumbilicResult semiumbilic_test(const ShapeData& sd);

/// Both sides of the normal-curvature equivalence:
/// R == 0  <=>  S1, S2 self-adjoint and (inflection or (semiumbilic and the
/// nu-principal forms for nu = xi1, xi2 are proportional to the asymptotic
/// form)).
struct FlatNormalReport {
    bool lhs = false;
    bool rhs = false;
    double r_norm = 0;
    bool self_adjoint = false;
    bool inflection = false;
    bool semiumbilic = false;
    bool configs_agree = false;
    double config_residual = 0;  // max cross-product norm of normalized coefficient vectors
    bool agree() const { return lhs == rhs; }
};
FlatNormalReport flat_normal_check(const ShapeData& sd, double b, double c);

}  // namespace affine4
