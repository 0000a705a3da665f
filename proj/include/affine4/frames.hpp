#pragma once

#include <optional>

#include "affine4/linalg.hpp"
#include "affine4/surface.hpp"

namespace affine4 {

/// A transversal vector field carried in jets, with its provenance.
struct MetricField {
    JetVec4 xi;
    enum class Source { User, Auto, Blaschke } source = Source::User;
};

/// Tangent field Y = a d/du + b d/dv with its R^4 components.
struct TangentField {
    Jet3 a, b;
    JetVec4 vec;
};

TangentField make_tangent(const SurfaceJet& jet, const Jet3& a, const Jet3& b);

/// Directional derivative of an R^4-valued field along a tangent field.
JetVec4 dir_derivative(const JetVec4& field, const TangentField& along);

/// Basis-selection state for the deterministic Euclidean-complement
/// constructions. Frozen and reused when a pipeline is re-evaluated at
/// finite-difference stencil points, so the sampled fields stay smooth.
struct ComplementChoice {
    std::array<int, 2> idx{-1, -1};
    bool set() const { return idx[0] >= 0; }
};

/// Orthonormal (Euclidean) basis of the orthogonal complement of the
/// tangent plane; basis vectors are the two standard basis vectors with
/// largest projection residual, orthonormalized in that order, second
/// vector negated if needed so that [X_u, X_v, n1, n2] > 0.
std::pair<JetVec4, JetVec4> euclidean_complement(const SurfaceJet& jet, ComplementChoice& choice);

/// G(Y_i, Y_j) = [Y_1, Y_2, D_{Y_j} Y_i, xi] for constant-coefficient
/// tangent vectors Y_i = y_i[0] X_u + y_i[1] X_v.
Mat2Sym metric_G(const SurfaceJet& jet, const std::array<double, 2>& y1, const std::array<double, 2>& y2,
                 const Vec4& xi);

/// G in the coordinate frame (X_u, X_v) as jets.
std::array<Jet3, 3> metric_G_jets(const SurfaceJet& jet, const JetVec4& xi);

/// g = G / (det G)^{1/4}. Positive definiteness at tolerance
/// min eigenvalue > 1e-12 * trace; throws NotPositiveDefinite otherwise.
Mat2Sym normalize_metric(const Mat2Sym& G);

struct AutoXiChoice {
    ComplementChoice comp;
    std::array<double, 2> coeffs{0, 0};
    bool set = false;
};

/// Deterministic metric field: midpoint of the definite arc of the
/// Euclidean second-fundamental pencil, mapped through the (r,s) ~ (b2,-b1)
/// correspondence, sign fixed so G is positive definite.
MetricField select_metric_field(const SurfaceJet& jet);
MetricField select_metric_field(const SurfaceJet& jet, AutoXiChoice& choice);

/// Gram-Schmidt frame with g(X_i, X_j) = delta_ij:
/// X1 = X_u / sqrt(g(X_u,X_u)), X2 = (X_v - g(X_v,X1) X1) / |.|_g.
std::pair<TangentField, TangentField> orthonormal_frame(const SurfaceJet& jet, const MetricField& xi);

/// Everything the downstream modules need at one point.
struct FramePoint {
    SurfaceJet jet;
    MetricField field;
    TangentField X1, X2;
    JetVec4 xi1, xi2;   // the unique frame of the chosen transversal bundle
    JetVec4 nu1, nu2;   // starting bundle basis the frame was built from
    Mat2Sym G;          // coordinate-frame G at the point
    Mat2Sym g;          // normalized metric, coordinate frame
    double detG = 0;
};

/// The unique transversal frame with [X1,X2,xi1,xi2] = 1, h^1(X1,X1) = 0,
/// h^2(X_i,X_j) = delta_ij and -xi1 in [xi], built from an arbitrary
/// starting basis (nu1, nu2) by the explicit alpha/beta/phi/psi change.
std::pair<JetVec4, JetVec4> distinguished_frame(const SurfaceJet& jet, const TangentField& X1, const TangentField& X2,
                                          const JetVec4& xi, const JetVec4& nu1, const JetVec4& nu2);

/// Full pipeline at one point: metric field (given or auto), orthonormal
/// frame, distinguished frame from sigma0 (given or the Euclidean complement).
FramePoint build_frame_point(const SurfaceJet& jet, const MetricField& field,
                             const std::optional<std::pair<JetVec4, JetVec4>>& sigma0 = std::nullopt);

/// Residuals of the six distinguished-frame conditions plus g-orthonormality;
/// all ~0 for a valid FramePoint.
struct FrameResiduals {
    double det_one = 0;        // |[X1,X2,xi1,xi2] - 1|
    double h1_11 = 0;          // |h^1(X1,X1)|
    double h2_delta = 0;       // max |h^2(X_i,X_j) - delta_ij|
    double xi_class = 0;       // transversal part of (-xi1 - xi), relative
    double orthonormal = 0;    // max |g(X_i,X_j) - delta_ij|
    double max() const;
};
FrameResiduals frame_residuals(const FramePoint& fp);

/// Transversal metric in the (xi1, xi2) basis:
/// [[1, -c/2], [-c/2, 4 b^2 + (5/4) c^2]] with b = h^1(X1,X2), c = h^1(X2,X2).
struct TransversalMetric {
    Mat2Sym m;
};
TransversalMetric gperp(double b, double c);

}  // namespace affine4
