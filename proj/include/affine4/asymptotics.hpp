#pragma once

#include <string>
#include <vector>

#include "affine4/connection.hpp"

namespace affine4 {

/// One affine binormal (r, s) in the dual basis (lambda1, lambda2) together
/// with its asymptotic direction in (X1, X2) coordinates.
struct AsymptoticEntry {
    HomPair binormal;
    std::array<double, 2> direction{1, 0};
    bool any_direction = false;  // rA + sB ~ 0: every tangent direction works
};

struct AsymptoticData {
    std::vector<AsymptoticEntry> entries;  // ordered by s/r descending
    bool all_directions = false;
};

/// Binormals and asymptotic directions of the pencil (A, B) = (h^1, h^2).
AsymptoticData binormals(const Mat2Sym& a, const Mat2Sym& b);

/// b, c from the normalized frame; true iff 4 b^2 + c^2 <= 1e-10.
bool inflection_test(double b, double c);

/// Hessian of the height function H_{r lambda1 + s lambda2}: r A + s B.
Mat2Sym height_hessian(double r, double s, const Mat2Sym& a, const Mat2Sym& b);

/// P dv^2 + Q du dv + R du^2 = 0 from the 3x3 determinant expansion:
/// P = bg - cf, Q = ag - ce, R = af - be with A = [[a,b],[b,c]], B = [[e,f],[f,g]].
struct OdeCoeffs {
    double P = 0, Q = 0, R = 0;
    double eval(double du, double dv) const { return P * dv * dv + Q * du * dv + R * du * du; }
};
OdeCoeffs asymptotic_ode_coeffs(const Mat2Sym& a, const Mat2Sym& b);

struct Polyline {
    struct Sample {
        double u = 0, v = 0;
        Vec4 x;
    };
    std::vector<Sample> points;
    std::string termination;  // boundary | inflection | umbilic-like | arclen | not-locally-convex
    int branch = 0;
};

/// Fixed-step RK4 on the unit (parameter-space) direction field of the
/// chosen branch, with sign continuity. The field is independent of the
/// metric field; the surface's attached xi is used when present, otherwise
/// the automatic one.
Polyline integrate_asymptotic_line(const ImmersionSpec& spec, double u0, double v0, int branch, double step,
                                   double arclen);

}  // namespace affine4
