#pragma once

#include <random>

#include "affine4/asymptotics.hpp"
#include "affine4/curvature.hpp"
#include "affine4/equiaffine.hpp"
#include "affine4/hyperquadric.hpp"

namespace affine4 {

/// Frozen basis-selection state so a pipeline re-evaluated at nearby points
/// samples one smooth field (finite-difference stencils, grid sweeps).
struct PipelineChoices {
    AutoXiChoice auto_xi;
    ComplementChoice sigma0;
};

/// Metric field for a surface: explicit expressions when present, the
/// Blaschke restriction for catalog members of a quadric, the automatic
/// pencil-midpoint field otherwise.
MetricField resolve_metric_field(const ImmersionSpec& spec, const SurfaceJet& jet, PipelineChoices& choices);

/// The starting bundle span{X_vv, X_uu} of the product-of-curves example.
std::pair<JetVec4, JetVec4> second_derivative_sigma0(const SurfaceJet& jet);

/// Frame + connection + both equiaffine planes at one parameter point.
struct PointAnalysis {
    SurfaceJet jet;
    FramePoint fp;
    ConnectionData cd;
    bool inflection = false;
    PlaneAtPoint anti{}, sym{};
    CorrectionCoeffs anti_z{}, sym_z{};
};
PointAnalysis analyze_point(const ImmersionSpec& spec, double u, double v, PipelineChoices& choices);

/// Value-level sample of the corrected transversal frame, used as the
/// finite-difference stencil payload.
struct CorrectedFrameSample {
    Vec4 x1, x2;
    std::array<double, 2> x1c{}, x2c{};
    Vec4 xi1p, xi2p;
};
CorrectedFrameSample eval_corrected_frame(const ImmersionSpec& spec, double u, double v, bool antisym,
                                          PipelineChoices& choices);

/// Shape operators and tau-forms of a corrected (equiaffine) bundle.
/// The bundle's own derivatives are fourth-order data in X, beyond Jet3;
/// the frame field is therefore sampled exactly at stencil points and
/// differentiated by Richardson-extrapolated central differences.
struct CorrectedBundleData {
    ShapeData sd;
    double b = 0, c = 0;
    double tau[2][2][2] = {};
};
CorrectedBundleData corrected_bundle_data(const ImmersionSpec& spec, double u, double v, bool antisym,
                                          double step = 1e-3);

/// Graph surface (u, v, q(u,v), (u^2+v^2)/2 + r(u,v)) with random cubic and
/// quartic tails; locally strictly convex near the origin.
ImmersionSpec random_convex_quartic(std::mt19937& gen);

/// Random membership surface of the named quadric (a random graph function
/// g fed through the catalog entry).
ImmersionSpec random_quadric_member(QuadricKind kind, std::mt19937& gen);

/// Pick a parameter point where the surface is convex and not an inflection.
struct SamplePoint {
    double u = 0, v = 0;
};
SamplePoint random_good_point(const ImmersionSpec& spec, std::mt19937& gen, int max_tries = 60);

}  // namespace affine4
