#include "affine4/analysis.hpp"

#include <cmath>

namespace affine4 {

MetricField resolve_metric_field(const ImmersionSpec& spec, const SurfaceJet& jet, PipelineChoices& choices) {
    if (spec.xi) {
        MetricField mf;
        mf.source = MetricField::Source::User;
        const std::array<Jet3, 2> vars = {Jet3::variable_u(jet.u), Jet3::variable_v(jet.v)};
        for (int k = 0; k < 4; ++k)
            mf.xi[k] = eval_expr<Jet3>((*spec.xi)[static_cast<std::size_t>(k)], std::span<const Jet3>(vars));
        return mf;
    }
    if (spec.quadric) {
        MetricField mf;
        mf.source = MetricField::Source::Blaschke;
        mf.xi = blaschke_restriction(jet, hypersurface(*spec.quadric)).xi;
        return mf;
    }
    return select_metric_field(jet, choices.auto_xi);
}

std::pair<JetVec4, JetVec4> second_derivative_sigma0(const SurfaceJet& jet) {
    JetVec4 nu1, nu2;
    for (int k = 0; k < 4; ++k) {
        nu1[k] = jet.jets[k].d_dv().d_dv();
        nu2[k] = jet.jets[k].d_du().d_du();
    }
    return {nu1, nu2};
}

PointAnalysis analyze_point(const ImmersionSpec& spec, double u, double v, PipelineChoices& choices) {
    PointAnalysis pa;
    pa.jet = eval_jet3(spec, u, v);
    const MetricField mf = resolve_metric_field(spec, pa.jet, choices);
    const auto sigma0 = euclidean_complement(pa.jet, choices.sigma0);
    pa.fp = build_frame_point(pa.jet, mf, sigma0);
    pa.cd = connection_data(pa.fp);
    if (inflection_test(pa.cd.b, pa.cd.c)) {
        pa.inflection = true;
        return pa;
    }
    pa.anti_z = antisymmetric_correction(pa.cd);
    pa.sym_z = symmetric_correction(pa.cd);
    pa.anti = apply_correction(pa.fp, pa.anti_z);
    pa.sym = apply_correction(pa.fp, pa.sym_z);
    return pa;
}

CorrectedFrameSample eval_corrected_frame(const ImmersionSpec& spec, double u, double v, bool antisym,
                                          PipelineChoices& choices) {
    PointAnalysis pa = analyze_point(spec, u, v, choices);
    if (pa.inflection) throw InflectionPoint("corrected frame undefined at an inflection");
    CorrectedFrameSample s;
    s.x1 = value_of(pa.fp.X1.vec);
    s.x2 = value_of(pa.fp.X2.vec);
    s.x1c = {pa.fp.X1.a.value(), pa.fp.X1.b.value()};
    s.x2c = {pa.fp.X2.a.value(), pa.fp.X2.b.value()};
    const PlaneAtPoint& p = antisym ? pa.anti : pa.sym;
    s.xi1p = p.b1;
    s.xi2p = p.b2;
    return s;
}

CorrectedBundleData corrected_bundle_data(const ImmersionSpec& spec, double u, double v, bool antisym,
                                          double step) {
    PipelineChoices choices;
    const CorrectedFrameSample center = eval_corrected_frame(spec, u, v, antisym, choices);

    PipelineChoices frozen = choices;
    auto sample = [&](double su, double sv) { return eval_corrected_frame(spec, su, sv, antisym, frozen); };

    // Richardson-extrapolated central differences of the corrected frame;
    // the stencil samples are exact pipeline evaluations.
    auto derivative = [&](bool along_u, const Vec4 CorrectedFrameSample::*member) {
        auto diff = [&](double h) {
            const CorrectedFrameSample plus = along_u ? sample(u + h, v) : sample(u, v + h);
            const CorrectedFrameSample minus = along_u ? sample(u - h, v) : sample(u, v - h);
            Vec4 d;
            for (int i = 0; i < 4; ++i) d[i] = ((plus.*member)[i] - (minus.*member)[i]) / (2.0 * h);
            return d;
        };
        const Vec4 coarse = diff(step);
        const Vec4 fine = diff(step / 2.0);
        Vec4 d;
        for (int i = 0; i < 4; ++i) d[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
        return d;
    };
    const Vec4 du1 = derivative(true, &CorrectedFrameSample::xi1p);
    const Vec4 dv1 = derivative(false, &CorrectedFrameSample::xi1p);
    const Vec4 du2 = derivative(true, &CorrectedFrameSample::xi2p);
    const Vec4 dv2 = derivative(false, &CorrectedFrameSample::xi2p);

    auto along = [&](const std::array<double, 2>& coeff, const Vec4& du_, const Vec4& dv_) {
        Vec4 d;
        for (int i = 0; i < 4; ++i) d[i] = coeff[0] * du_[i] + coeff[1] * dv_[i];
        return d;
    };

    CorrectedBundleData out;
    for (int i = 0; i < 2; ++i) {
        const auto& coeff = (i == 0) ? center.x1c : center.x2c;
        const auto d1 = frame_decompose(along(coeff, du1, dv1), center.x1, center.x2, center.xi1p, center.xi2p);
        const auto d2 = frame_decompose(along(coeff, du2, dv2), center.x1, center.x2, center.xi1p, center.xi2p);
        if (i == 0) {
            out.sd.S1.m00 = -d1[0];
            out.sd.S1.m10 = -d1[1];
            out.sd.S2.m00 = -d2[0];
            out.sd.S2.m10 = -d2[1];
        } else {
            out.sd.S1.m01 = -d1[0];
            out.sd.S1.m11 = -d1[1];
            out.sd.S2.m01 = -d2[0];
            out.sd.S2.m11 = -d2[1];
        }
        out.tau[0][0][i] = d1[2];
        out.tau[0][1][i] = d1[3];
        out.tau[1][0][i] = d2[2];
        out.tau[1][1][i] = d2[3];
    }

    PipelineChoices center_choices = choices;
    const PointAnalysis pa = analyze_point(spec, u, v, center_choices);
    out.b = pa.cd.b;
    out.c = pa.cd.c;
    return out;
}

namespace {

ExprPtr monomial(int i, int j) {
    return make_mul(make_pow(make_var(0), i), make_pow(make_var(1), j));
}

ExprPtr random_poly(std::mt19937& gen, int min_degree, int max_degree, double amplitude) {
    std::uniform_real_distribution<double> coeff(-amplitude, amplitude);
    ExprPtr acc = make_number(0.0);
    for (int d = min_degree; d <= max_degree; ++d) {
        for (int i = 0; i <= d; ++i) {
            const int j = d - i;
            acc = make_add(acc, make_mul(make_number(coeff(gen)), monomial(i, j)));
        }
    }
    return acc;
}

}  // namespace

ImmersionSpec random_convex_quartic(std::mt19937& gen) {
    ImmersionSpec spec;
    spec.name = "random-convex-quartic";
    const ExprPtr u = make_var(0), v = make_var(1);
    const ExprPtr q = random_poly(gen, 2, 4, 0.3);
    const ExprPtr bowl = make_mul(make_number(0.5), make_add(make_pow(u, 2), make_pow(v, 2)));
    const ExprPtr w = make_add(bowl, random_poly(gen, 3, 4, 0.2));
    spec.components = {u, v, q, w};
    spec.domain = {-0.2, 0.2, -0.2, 0.2};
    return spec;
}

ImmersionSpec random_quadric_member(QuadricKind kind, std::mt19937& gen) {
    auto fmt = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    std::uniform_real_distribution<double> small(-0.25, 0.25);
    const std::string poly = "(" + fmt(small(gen)) + ")*u + (" + fmt(small(gen)) + ")*v + (" +
                             fmt(small(gen)) + ")*u*v + (" + fmt(small(gen)) + ")*u^2 + (" + fmt(small(gen)) +
                             ")*v^2 + (" + fmt(small(gen)) + ")*u^2*v";
    CatalogArgs args;
    switch (kind) {
        case QuadricKind::Paraboloid:
            args.g = poly;
            return catalog("paraboloid-graph", args);
        case QuadricKind::Hyperboloid:
            args.g = poly;
            return catalog("hyperboloid-graph", args);
        case QuadricKind::Ellipsoid:
            args.g = "0.2*(" + poly + ")";
            return catalog("ellipsoid-graph", args);
        case QuadricKind::Q13:
            args.g = "1 + 0.4*(" + poly + ")";
            return catalog("q13-graph", args);
    }
    throw UnknownQuadric("?");
}

SamplePoint random_good_point(const ImmersionSpec& spec, std::mt19937& gen, int max_tries) {
    const double margin_u = 0.15 * (spec.domain.u1 - spec.domain.u0);
    const double margin_v = 0.15 * (spec.domain.v1 - spec.domain.v0);
    std::uniform_real_distribution<double> ur(spec.domain.u0 + margin_u, spec.domain.u1 - margin_u);
    std::uniform_real_distribution<double> vr(spec.domain.v0 + margin_v, spec.domain.v1 - margin_v);
    for (int t = 0; t < max_tries; ++t) {
        const double u = ur(gen), v = vr(gen);
        try {
            PipelineChoices choices;
            const PointAnalysis pa = analyze_point(spec, u, v, choices);
            if (!pa.inflection && 4 * pa.cd.b * pa.cd.b + pa.cd.c * pa.cd.c > 1e-6) return {u, v};
        } catch (const Error&) {
            continue;
        }
    }
    throw NotLocallyConvex("no usable sample point found for " + spec.name);
}

}  // namespace affine4
