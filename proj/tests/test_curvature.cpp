#include <doctest.h>

#include "affine4/analysis.hpp"
#include "affine4/curvature.hpp"
#include "testing.hpp"

using namespace affine4;
using namespace affine4::testing;

TEST_CASE("shape_operator combines S1 and S2") {
    ShapeData sd;
    sd.S1 = Mat2{1, 2, 3, 4};
    sd.S2 = Mat2{-1, 0, 0, 5};
    const Mat2 s1 = shape_operator(1, 0, sd);
    CHECK(s1.m00 == 1.0);
    CHECK(s1.m11 == 4.0);
    const Mat2 mix = shape_operator(2, 1, sd);
    CHECK(mix.m00 == 1.0);
    CHECK(mix.m11 == 13.0);
    CHECK_THROWS_AS((void)shape_operator(0, 0, sd), ZeroVector);
}

TEST_CASE("radial field of a central quadric has S = -Id; vertical graph field has S = 0") {
    const ImmersionSpec spec = catalog("ellipsoid-graph", {.g = "(u+v)/5"});
    const SurfaceJet jet = eval_jet3(spec, 0.1, -0.05);
    PipelineChoices choices;
    const MetricField mf = resolve_metric_field(spec, jet, choices);
    const FramePoint fp = build_frame_point(jet, mf);
    const Vec4 x1 = value_of(fp.X1.vec), x2 = value_of(fp.X2.vec);
    const Vec4 n1 = value_of(fp.xi1), n2 = value_of(fp.xi2);

    // radial field: D_X pos = X
    const JetVec4 pos = jet.jets;
    const auto d1 = frame_decompose(value_of(dir_derivative(pos, fp.X1)), x1, x2, n1, n2);
    const auto d2 = frame_decompose(value_of(dir_derivative(pos, fp.X2)), x1, x2, n1, n2);
    const Mat2 s{-d1[0], -d2[0], -d1[1], -d2[1]};
    CHECK(s.m00 == doctest::Approx(-1.0));
    CHECK(s.m11 == doctest::Approx(-1.0));
    CHECK(std::abs(s.m01) < 1e-10);
    CHECK(std::abs(s.m10) < 1e-10);

    // constant vertical field on the paraboloid: D_X e4 = 0
    const ImmersionSpec par = catalog("paraboloid-graph", {.g = "u*v"});
    const SurfaceJet jp = eval_jet3(par, 0.3, 0.2);
    PipelineChoices pc;
    const FramePoint fpp = build_frame_point(jp, resolve_metric_field(par, jp, pc));
    const JetVec4 e4 = to_jets(Vec4{0, 0, 0, 1});
    const Vec4 z1 = value_of(dir_derivative(e4, fpp.X1));
    CHECK(norm(z1) < 1e-15);
}

TEST_CASE("normal curvature of the product of parabolas vanishes") {
    const ImmersionSpec spec = catalog("product-parabolas");
    const SurfaceJet jet = eval_jet3(spec, 0.25, 0.4);
    PipelineChoices choices;
    const MetricField mf = resolve_metric_field(spec, jet, choices);
    const FramePoint fp = build_frame_point(jet, mf, second_derivative_sigma0(jet));
    const ConnectionData cd = connection_data(fp);
    ShapeData sd;
    sd.S1 = cd.S1;
    sd.S2 = cd.S2;
    const NormalCurvature r = normal_curvature(sd, cd.b, cd.c);
    CHECK(r.max_abs() < 1e-12);
}

TEST_CASE("multiples of the identity commute with h") {
    ShapeData sd;
    sd.S1 = Mat2{1, 0, 0, 1};
    sd.S2 = Mat2{1, 0, 0, 1};
    const NormalCurvature r = normal_curvature(sd, 0.8, -0.4);
    CHECK(r.max_abs() < 1e-15);
}

TEST_CASE("displayed expansion equals the direct h-formula") {
    Rng rng(515);
    for (int t = 0; t < 500; ++t) {
        ShapeData sd;
        sd.S1 = Mat2{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        sd.S2 = Mat2{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const double b = rng.uniform(-2, 2), c = rng.uniform(-2, 2);
        const NormalCurvature disp = normal_curvature(sd, b, c);
        const NormalCurvature direct = normal_curvature_direct(sd, b, c, {1, 0}, {0, 1});
        CHECK(std::abs(disp.r_xi1[0] - direct.r_xi1[0]) <= 1e-10);
        CHECK(std::abs(disp.r_xi1[1] - direct.r_xi1[1]) <= 1e-10);
        CHECK(std::abs(disp.r_xi2[0] - direct.r_xi2[0]) <= 1e-10);
        CHECK(std::abs(disp.r_xi2[1] - direct.r_xi2[1]) <= 1e-10);
    }
}

TEST_CASE("R(X,Y) is antisymmetric in its tangent arguments") {
    Rng rng(525);
    for (int t = 0; t < 100; ++t) {
        ShapeData sd;
        sd.S1 = Mat2{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        sd.S2 = Mat2{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const double b = rng.uniform(-2, 2), c = rng.uniform(-2, 2);
        const std::array<double, 2> x{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const std::array<double, 2> y{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const NormalCurvature fwd = normal_curvature_direct(sd, b, c, x, y);
        const NormalCurvature bwd = normal_curvature_direct(sd, b, c, y, x);
        CHECK(std::abs(fwd.r_xi1[0] + bwd.r_xi1[0]) <= 1e-12);
        CHECK(std::abs(fwd.r_xi1[1] + bwd.r_xi1[1]) <= 1e-12);
        CHECK(std::abs(fwd.r_xi2[0] + bwd.r_xi2[0]) <= 1e-12);
        CHECK(std::abs(fwd.r_xi2[1] + bwd.r_xi2[1]) <= 1e-12);
    }
}

TEST_CASE("semiumbilic test basics") {
    ShapeData sd;
    sd.S1 = Mat2{0, 0, 0, 0};
    sd.S2 = Mat2{1, 0, 0, 1};
    const SemiumbilicResult r = semiumbilic_test(sd);
    CHECK(r.semiumbilic);
    REQUIRE(r.directions.size() == 2);
    CHECK(r.directions[0].r == 1.0);
    CHECK(r.directions[0].s == 0.0);
    CHECK(r.directions[1].r == 0.0);
    CHECK(r.directions[1].s == 1.0);

    ShapeData bad;
    bad.S1 = Mat2{0, 1, 0, 0};  // l3 = 1
    bad.S2 = Mat2{0, 0, 1, 0};  // m2 = 1
    const SemiumbilicResult rb = semiumbilic_test(bad);
    CHECK(!rb.semiumbilic);
    CHECK(rb.minor_norm == doctest::Approx(1.0));
}

TEST_CASE("flat normal check on the product of parabolas") {
    const ImmersionSpec spec = catalog("product-parabolas");
    const SurfaceJet jet = eval_jet3(spec, -0.3, 0.5);
    PipelineChoices choices;
    const MetricField mf = resolve_metric_field(spec, jet, choices);
    const FramePoint fp = build_frame_point(jet, mf, second_derivative_sigma0(jet));
    const ConnectionData cd = connection_data(fp);
    ShapeData sd;
    sd.S1 = cd.S1;
    sd.S2 = cd.S2;
    const FlatNormalReport rep = flat_normal_check(sd, cd.b, cd.c);
    CHECK(rep.lhs);
    CHECK(rep.rhs);
    CHECK(rep.semiumbilic);
}

TEST_CASE("non-self-adjoint shape data fails both sides") {
    ShapeData sd;
    sd.S1 = Mat2{0.5, 0.1, 0.9, -0.2};  // l2 = 0.1 != l3 = 0.9
    sd.S2 = Mat2{1, 0, 0, 1};
    const FlatNormalReport rep = flat_normal_check(sd, 0.6, 0.3);
    CHECK(!rep.lhs);
    CHECK(!rep.rhs);
    CHECK(rep.agree());
}

namespace {

ShapeData semiumbilic_by_construction(Rng& rng, double& b, double& c) {
    b = rng.uniform(0.3, 1.5) * (rng.integer(0, 1) ? 1 : -1);
    c = rng.uniform(-1.5, 1.5);
    ShapeData sd;
    const double l1 = rng.uniform(-2, 2);
    const double l2 = rng.uniform(-2, 2);
    const double l4 = l1 + l2 * c / b;
    sd.S1 = Mat2{l1, l2, l2, l4};
    sd.S2 = Mat2{1, 0, 0, 1};
    return sd;
}

}  // namespace

TEST_CASE("semiumbilic-by-construction passes both directions of the equivalence") {
    Rng rng(535);
    for (int t = 0; t < 100; ++t) {
        double b, c;
        const ShapeData sd = semiumbilic_by_construction(rng, b, c);
        const FlatNormalReport rep = flat_normal_check(sd, b, c);
        CHECK(rep.lhs);
        CHECK(rep.rhs);
    }
}

TEST_CASE("the normal-curvature equivalence holds on well-margined random inputs") {
    Rng rng(545);
    int processed = 0;
    int lhs_true = 0;
    for (int t = 0; t < 2000 && processed < 500; ++t) {
        ShapeData sd;
        double b, c;
        const int kind = t % 4;
        if (kind == 0) {
            // fully random
            sd.S1 = Mat2{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
            sd.S2 = Mat2{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
            b = rng.uniform(-2, 2);
            c = rng.uniform(-2, 2);
        } else if (kind == 1) {
            sd = semiumbilic_by_construction(rng, b, c);
        } else if (kind == 2) {
            // self-adjoint, configurations generically disagree
            const double l2 = rng.uniform(-2, 2), m2 = rng.uniform(-2, 2);
            sd.S1 = Mat2{rng.uniform(-2, 2), l2, l2, rng.uniform(-2, 2)};
            sd.S2 = Mat2{rng.uniform(-2, 2), m2, m2, rng.uniform(-2, 2)};
            b = rng.uniform(-2, 2);
            c = rng.uniform(-2, 2);
        } else {
            // inflection data with self-adjoint commuting-by-identity parts
            sd.S1 = Mat2{rng.uniform(-2, 2), 0, 0, rng.uniform(-2, 2)};
            const double m = rng.uniform(-2, 2);
            sd.S2 = Mat2{m, 0, 0, m};
            b = 0;
            c = 0;
        }

        // margin filter: every decision quantity at least 10x away from its
        // threshold in either direction
        const double scale = 1.0 + sd.S1.max_abs() + sd.S2.max_abs();
        auto clear = [](double q, double tol) { return q <= tol / 10.0 || q >= tol * 10.0; };
        const NormalCurvature r = normal_curvature(sd, b, c);
        const SemiumbilicResult semi = semiumbilic_test(sd);
        const FlatNormalReport rep = flat_normal_check(sd, b, c);
        if (!clear(r.max_abs(), 1e-8 * scale)) continue;
        if (!clear(std::abs(sd.l2() - sd.l3()), 1e-8 * scale)) continue;
        if (!clear(std::abs(sd.m2() - sd.m3()), 1e-8 * scale)) continue;
        if (!clear(4 * b * b + c * c, 1e-10)) continue;
        if (!clear(semi.minor_norm, 1e-9)) continue;
        if (!clear(rep.config_residual, 1e-8)) continue;

        CAPTURE(t);
        CHECK(rep.agree());
        if (rep.lhs) ++lhs_true;
        ++processed;
    }
    CHECK(processed >= 500);
    CHECK(lhs_true >= 100);  // both outcomes must actually occur
}
