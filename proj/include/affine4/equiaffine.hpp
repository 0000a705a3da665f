#pragma once

#include "affine4/connection.hpp"

namespace affine4 {

/// Transversal 2-plane at a point, basis normalized so [X1,X2,b1,b2] = 1.
struct PlaneAtPoint {
    Vec4 b1, b2;
};

/// Tangent corrections Z1 = a X1 + b X2, Z2 = c X1 + d X2 with
/// xi_i' = xi_i - Z_i.
struct CorrectionCoeffs {
    double a = 0, b = 0, c = 0, d = 0;
};

/// Closed-form corrections turning the current bundle into the unique
/// antisymmetric (resp. symmetric) equiaffine bundle. Throws
/// InflectionPoint when 4 b^2 + c^2 <= 1e-10.
CorrectionCoeffs antisymmetric_correction(const ConnectionData& cd);
CorrectionCoeffs symmetric_correction(const ConnectionData& cd);

PlaneAtPoint apply_correction(const FramePoint& fp, const CorrectionCoeffs& z);

PlaneAtPoint antisymmetric_plane(const ConnectionData& cd, const FramePoint& fp);
PlaneAtPoint symmetric_plane(const ConnectionData& cd, const FramePoint& fp);

/// Connection coefficients of the corrected bundle, via the exact pointwise
/// law nabla' = nabla + h^1(.,.) Z1 + h^2(.,.) Z2. Used to recompute the
/// B/C/D residuals of a constructed plane.
std::array<double, 8> transform_connection(const ConnectionData& cd, const CorrectionCoeffs& z);

/// Max principal angle between two 2-planes, radians in [0, pi/2].
double plane_compare(const PlaneAtPoint& p, const PlaneAtPoint& q);

/// Euclidean norm of the component of Y/|Y| orthogonal to the plane.
double contains_direction(const PlaneAtPoint& p, const Vec4& y);

}  // namespace affine4
