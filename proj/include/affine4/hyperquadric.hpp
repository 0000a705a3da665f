#pragma once

#include "affine4/equiaffine.hpp"
#include "affine4/frames.hpp"

namespace affine4 {

/// Graph hypersurface x4 = f(x, y, z), either a named kind with its
/// deterministic tangent frame or a user expression (graph frame).
/// Frames: E_i = e_i + f_i e4 for graphs; q13 scales to e_i' = x_i E_i
/// (the frame the constant Blaschke matrix is stated in).
struct HypersurfaceSpec {
    std::optional<QuadricKind> kind;
    ExprPtr f;
    std::array<ExprPtr, 3> fd;
    std::array<std::array<ExprPtr, 3>, 3> fdd;
    bool scaled_frame = false;
};

inline const std::array<std::string, 3> kHypersurfaceVars = {"x", "y", "z"};

HypersurfaceSpec hypersurface(QuadricKind kind);
HypersurfaceSpec hypersurface_graph(const std::string& f_text);
QuadricKind quadric_from_name(const std::string& name);
const char* quadric_name(QuadricKind kind);

/// Blaschke metric of the hypersurface at a point, in the per-kind frame.
struct Blaschke3 {
    std::array<std::array<double, 3>, 3> G{};
    std::array<Vec4, 3> frame{};
    double detH = 0;
};
Blaschke3 blaschke_graph_metric(const HypersurfaceSpec& n, const std::array<double, 3>& point);

/// The restriction construction: tangent completion X3, lambda =
/// (det3 H)^{1/5} / (det2 G)^{1/4}, xi = -X3 / lambda^2, all as jet fields
/// along M, so the frames pipeline can run on the result.
struct BlaschkeRestriction {
    JetVec4 xi;
    JetVec4 X3;
    Mat2Sym g_on_M;               // Blaschke metric restricted to T_pM (values)
    std::array<Vec4, 3> n_frame;  // hypersurface frame at the point (values)
    std::array<std::array<double, 3>, 3> G_frame{};  // Blaschke metric in n_frame
};
BlaschkeRestriction blaschke_restriction(const SurfaceJet& jet, const HypersurfaceSpec& n);

/// Spec-facing pair (restricted metric, metric field value).
struct RestrictResult {
    Mat2Sym g_on_M;
    Vec4 xi;
};
RestrictResult restrict_blaschke_xi(const ImmersionSpec& m, const HypersurfaceSpec& n, double u, double v);

/// Affine normal of the named quadric: (0,0,0,1) for the paraboloid, the
/// position vector for the central ones (all proper/improper affine spheres).
Vec4 quadric_affine_normal(QuadricKind kind, const Vec4& point);

/// Membership residuals for a surface M inside a convex quadric N.
struct HyperquadricReport {
    double plane_angle = 0;        // antisymmetric vs symmetric plane
    double normal_in_plane = 0;    // quadric normal against the antisymmetric plane
    double shape_off_identity = 0; // |S_Y - mu Id| / (1 + |S_Y|)
    double shape_mu = 0;
    double gext_orth = 0;          // max |G_ext(xi_i', X_j)|, normalized
};
HyperquadricReport hyperquadric_check(const ImmersionSpec& m, const HypersurfaceSpec& n, double u, double v);

/// Counterexample fixture: the Nomizu-Vrancken normal plane of
/// (u, v, uv, (u^2+v^2+u^2v^2)/2) from the printed closed forms; returns
/// the residual of (0,0,0,1) against span{nu1, nu2}.
double nv_fixture_residual(double u, double v);
std::pair<Vec4, Vec4> nv_fixture_plane(double u, double v);

}  // namespace affine4
