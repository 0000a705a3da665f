#include "affine4/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace affine4 {

double SubCheck::ratio() const {
    if (at_least) {
        if (measured <= 0) return tolerance > 0 ? 1e300 : 0.0;
        return tolerance / measured;
    }
    if (tolerance <= 0) return measured > 0 ? 1e300 : 0.0;
    return measured / tolerance;
}

bool CriterionResult::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const SubCheck& c) { return c.pass(); });
}

const SubCheck& CriterionResult::binding() const {
    // a failing check always wins; among passing ones prefer the residual
    // (upper-bound) checks over sample-count floors
    const SubCheck* worst = nullptr;
    for (const SubCheck& c : checks) {
        if (!c.pass() && (!worst || c.ratio() > worst->ratio())) worst = &c;
    }
    if (worst) return *worst;
    for (const SubCheck& c : checks) {
        if (c.at_least) continue;
        if (!worst || c.ratio() > worst->ratio()) worst = &c;
    }
    return worst ? *worst : checks.front();
}

namespace {

PointAnalysis analyze(const ImmersionSpec& spec, double u, double v) {
    PipelineChoices choices;
    return analyze_point(spec, u, v, choices);
}

double corrected_residual(const ConnectionData& cd, const CorrectionCoeffs& z, bool antisym) {
    ConnectionData cd2 = cd;
    cd2.a = transform_connection(cd, z);
    const NablaGQuantities q = nabla_g_quantities(cd2);
    const double extra =
        antisym ? std::max(std::abs(q.C1), std::abs(q.C2)) : std::max(std::abs(q.D1), std::abs(q.D2));
    return std::max({std::abs(q.B1), std::abs(q.B2), extra});
}

// ---- 1: paraboloid metric formulas -------------------------------------

CriterionResult criterion_paraboloid_metric() {
    CriterionResult out{1, "paraboloid g_xi formulas (g = u v, 3x3 grid)", {}};
    const ImmersionSpec m = catalog("paraboloid-graph", {.g = "u*v"});
    double worst = 0;
    for (double u : {-0.6, 0.1, 0.7}) {
        for (double v : {-0.5, 0.2, 0.6}) {
            const SurfaceJet jet = eval_jet3(m, u, v);
            PipelineChoices choices;
            const MetricField mf = resolve_metric_field(m, jet, choices);
            const Mat2Sym g = normalize_metric(metric_G(jet, {1, 0}, {0, 1}, value_of(mf.xi)));
            const double gu = v, gv = u;
            worst = std::max({worst, std::abs(g.xx - (1 + gu * gu)), std::abs(g.xy - gu * gv),
                              std::abs(g.yy - (1 + gv * gv))});
        }
    }
    out.checks.push_back({"max abs error", worst, 1e-10});
    return out;
}

// ---- 2: hyperboloid metric formulas ------------------------------------

CriterionResult criterion_hyperboloid_metric() {
    CriterionResult out{2, "hyperboloid g_xi formulas (20 random points)", {}};
    const ImmersionSpec m = catalog("hyperboloid-graph", {.g = "(u^2-v)/3 + u*v/2"});
    const ExprPtr g_expr = m.components[2];
    const ExprPtr gu_expr = differentiate(g_expr, 0);
    const ExprPtr gv_expr = differentiate(g_expr, 1);
    std::mt19937 gen(20260808);
    std::uniform_real_distribution<double> dist(-0.7, 0.7);
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
        const double u = dist(gen), v = dist(gen);
        const std::array<double, 2> at{u, v};
        const double g = eval_expr<double>(g_expr, std::span<const double>(at));
        const double gu = eval_expr<double>(gu_expr, std::span<const double>(at));
        const double gv = eval_expr<double>(gv_expr, std::span<const double>(at));
        const double q = 1 + u * u + v * v + g * g;
        const double w11 = (1 + gu * gu) - (u + g * gu) * (u + g * gu) / q;
        const double w12 = gu * gv - (u + g * gu) * (v + g * gv) / q;
        const double w22 = (1 + gv * gv) - (v + g * gv) * (v + g * gv) / q;
        const SurfaceJet jet = eval_jet3(m, u, v);
        PipelineChoices choices;
        const MetricField mf = resolve_metric_field(m, jet, choices);
        const Mat2Sym gm = normalize_metric(metric_G(jet, {1, 0}, {0, 1}, value_of(mf.xi)));
        worst = std::max({worst, std::abs(gm.xx - w11), std::abs(gm.xy - w12), std::abs(gm.yy - w22)});
    }
    out.checks.push_back({"max abs error", worst, 1e-8});
    return out;
}

// ---- 3: Q(1,3) Blaschke values ------------------------------------------

CriterionResult criterion_q13_blaschke() {
    CriterionResult out{3, "Q(1,3) Blaschke entries 2^{3/5}, 2^{-2/5}", {}};
    const HypersurfaceSpec n = hypersurface(QuadricKind::Q13);
    const double dii = std::pow(2.0, 0.6);
    const double dij = std::pow(2.0, -0.4);
    double worst = 0;
    for (const auto& p :
         {std::array<double, 3>{1, 1, 1}, {0.8, 1.2, 0.9}, {1.3, 0.7, 1.1}, {0.6, 0.6, 1.4}}) {
        const Blaschke3 b = blaschke_graph_metric(n, p);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::abs(b.G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                                                 ((i == j) ? dii : dij)));
    }
    out.checks.push_back({"max abs error", worst, 1e-12});
    return out;
}

// ---- 4: distinguished-frame conditions ----------------------------------------

CriterionResult criterion_distinguished_frame() {
    CriterionResult out{4, "unique-frame conditions on 100 random convex quartics", {}};
    double worst = 0;
    int used = 0;
    for (unsigned seed = 0; used < 100 && seed < 400; ++seed) {
        std::mt19937 gen(60000 + seed);
        const ImmersionSpec spec = random_convex_quartic(gen);
        SamplePoint p;
        try {
            p = random_good_point(spec, gen);
        } catch (const Error&) {
            continue;
        }
        const SurfaceJet jet = eval_jet3(spec, p.u, p.v);
        PipelineChoices choices;
        const MetricField mf = resolve_metric_field(spec, jet, choices);
        const FramePoint fp = build_frame_point(jet, mf);
        worst = std::max(worst, frame_residuals(fp).max());
        ++used;
    }
    out.checks.push_back({"max condition residual", worst, 1e-9});
    out.checks.push_back({"surfaces sampled", static_cast<double>(used), 100, true});
    return out;
}

// ---- 5: frame / representative independence ------------------------------

CriterionResult criterion_metric_independence() {
    CriterionResult out{5, "g_xi frame independence and xi-class independence", {}};
    std::mt19937 gen(61000);
    std::uniform_real_distribution<double> coef(-2, 2);
    double worst_frame = 0, worst_class = 0;
    int used = 0;
    for (unsigned trial = 0; used < 100 && trial < 300; ++trial) {
        std::mt19937 sgen(62000 + trial % 7);
        const ImmersionSpec spec = random_convex_quartic(sgen);
        SamplePoint p;
        try {
            p = random_good_point(spec, sgen);
        } catch (const Error&) {
            continue;
        }
        const SurfaceJet jet = eval_jet3(spec, p.u, p.v);
        MetricField mf;
        try {
            mf = select_metric_field(jet);
        } catch (const Error&) {
            continue;
        }
        const Vec4 xi = value_of(mf.xi);
        const Mat2Sym base = normalize_metric(metric_G(jet, {1, 0}, {0, 1}, xi));

        double a = coef(gen), b = coef(gen), c = coef(gen), d = coef(gen);
        double det = a * d - b * c;
        if (std::abs(det) < 0.05) continue;
        if (det < 0) {
            c = -c;
            d = -d;
            det = -det;
        }
        const Mat2Sym gn = normalize_metric(metric_G(jet, {a, b}, {c, d}, xi));
        const double inv[2][2] = {{d / det, -b / det}, {-c / det, a / det}};
        auto form = [&](int i, int j) { return gn.apply(inv[i][0], inv[i][1], inv[j][0], inv[j][1]); };
        worst_frame = std::max({worst_frame, std::abs(form(0, 0) - base.xx), std::abs(form(0, 1) - base.xy),
                                std::abs(form(1, 1) - base.yy)});

        const Vec4 moved = xi + coef(gen) * jet.Xu() + coef(gen) * jet.Xv();
        const Mat2Sym gm = normalize_metric(metric_G(jet, {1, 0}, {0, 1}, moved));
        worst_class = std::max({worst_class, std::abs(gm.xx - base.xx), std::abs(gm.xy - base.xy),
                                std::abs(gm.yy - base.yy)});
        ++used;
    }
    out.checks.push_back({"frame independence", worst_frame, 1e-9});
    out.checks.push_back({"xi-class independence", worst_class, 1e-10});
    out.checks.push_back({"frame changes sampled", static_cast<double>(used), 100, true});
    return out;
}

// ---- 6: gperp rotation invariance ----------------------------------------

CriterionResult criterion_gperp() {
    CriterionResult out{6, "transversal metric invariance over 50 rotations", {}};
    const ImmersionSpec spec = catalog("paraboloid-graph", {.g = "u*v + u^2/4"});
    std::mt19937 gen(63000);
    std::uniform_real_distribution<double> pos(-0.5, 0.5), ang(0, 2 * M_PI);
    double worst = 0;
    int used = 0;
    for (int t = 0; used < 50 && t < 200; ++t) {
        const double u = pos(gen), v = pos(gen), theta = ang(gen);
        try {
            const SurfaceJet jet = eval_jet3(spec, u, v);
            PipelineChoices choices;
            const MetricField mf = resolve_metric_field(spec, jet, choices);
            const FramePoint base = build_frame_point(jet, mf);
            const ConnectionData cd0 = connection_data(base);

            const double ct = std::cos(theta), st = std::sin(theta);
            FramePoint rot = base;
            rot.X1 = make_tangent(jet, Jet3(ct) * base.X1.a + Jet3(st) * base.X2.a,
                                  Jet3(ct) * base.X1.b + Jet3(st) * base.X2.b);
            rot.X2 = make_tangent(jet, Jet3(-st) * base.X1.a + Jet3(ct) * base.X2.a,
                                  Jet3(-st) * base.X1.b + Jet3(ct) * base.X2.b);
            std::tie(rot.xi1, rot.xi2) = distinguished_frame(jet, rot.X1, rot.X2, mf.xi, base.nu1, base.nu2);
            const ConnectionData cd1 = connection_data(rot);

            const double kappa = std::sin(2 * theta) * cd0.b + std::sin(theta) * std::sin(theta) * cd0.c;
            const Mat2Sym gp = gperp(cd0.b, cd0.c).m;
            const Mat2Sym gpr = gperp(cd1.b, cd1.c).m;
            const double e11 = gpr.xx;
            const double e12 = gpr.xy - kappa * gpr.xx;
            const double e22 = gpr.yy - 2 * kappa * gpr.xy + kappa * kappa * gpr.xx;
            worst = std::max({worst, std::abs(e11 - gp.xx), std::abs(e12 - gp.xy), std::abs(e22 - gp.yy)});
            ++used;
        } catch (const Error&) {
            continue;
        }
    }
    out.checks.push_back({"max invariance residual", worst, 1e-9});
    out.checks.push_back({"rotations sampled", static_cast<double>(used), 50, true});
    return out;
}

// ---- 7: equiaffine residuals + uniqueness --------------------------------

CriterionResult criterion_equiaffine() {
    CriterionResult out{7, "equiaffine construction residuals and uniqueness", {}};
    double worst_res = 0, worst_angle = 0;
    int used = 0;
    for (unsigned seed = 0; used < 50 && seed < 250; ++seed) {
        std::mt19937 gen(64000 + seed);
        const ImmersionSpec spec = random_convex_quartic(gen);
        SamplePoint p;
        try {
            p = random_good_point(spec, gen);
        } catch (const Error&) {
            continue;
        }
        PointAnalysis pa;
        try {
            pa = analyze(spec, p.u, p.v);
        } catch (const Error&) {
            continue;
        }
        if (pa.inflection) continue;
        worst_res = std::max(worst_res, corrected_residual(pa.cd, pa.anti_z, true));
        worst_res = std::max(worst_res, corrected_residual(pa.cd, pa.sym_z, false));

        // sigma0-independence
        const SurfaceJet& jet = pa.jet;
        JetVec4 m1, m2;
        const JetVec4 xu = jet.field_du(), xv = jet.field_dv();
        for (int k = 0; k < 4; ++k) {
            m1[k] = pa.fp.nu1[k] + 0.4 * xu[k] - 0.2 * xv[k] + 0.15 * pa.fp.nu2[k];
            m2[k] = pa.fp.nu2[k] + 0.3 * xv[k];
        }
        const FramePoint fpB = build_frame_point(jet, pa.fp.field, std::make_pair(m1, m2));
        const ConnectionData cdB = connection_data(fpB);
        worst_angle = std::max(worst_angle, plane_compare(antisymmetric_plane(cdB, fpB), pa.anti));
        worst_angle = std::max(worst_angle, plane_compare(symmetric_plane(cdB, fpB), pa.sym));
        ++used;
    }
    out.checks.push_back({"max B/C/D residual", worst_res, 1e-7});
    out.checks.push_back({"max sigma0-independence angle", worst_angle, 1e-7});
    out.checks.push_back({"surfaces sampled", static_cast<double>(used), 50, true});
    return out;
}

// ---- 8: hyperquadric membership suite ---------------------------------------

CriterionResult criterion_hyperquadric_suite() {
    CriterionResult out{8, "hyperquadric members: planes, normal, shape, orthogonality", {}};
    double worst[4] = {0, 0, 0, 0};
    int points = 0;
    const QuadricKind kinds[] = {QuadricKind::Paraboloid, QuadricKind::Ellipsoid, QuadricKind::Hyperboloid};
    for (int ki = 0; ki < 3; ++ki) {
        const HypersurfaceSpec n = hypersurface(kinds[ki]);
        for (unsigned s = 0; s < 5; ++s) {
            std::mt19937 gen(65000 + 97 * static_cast<unsigned>(ki) + s);
            const ImmersionSpec m = random_quadric_member(kinds[ki], gen);
            int got = 0;
            for (int t = 0; t < 16 && got < 3; ++t) {
                SamplePoint p;
                try {
                    p = random_good_point(m, gen, 20);
                } catch (const Error&) {
                    continue;
                }
                HyperquadricReport rep;
                try {
                    rep = hyperquadric_check(m, n, p.u, p.v);
                } catch (const Error&) {
                    continue;
                }
                worst[0] = std::max(worst[0], rep.plane_angle);
                worst[1] = std::max(worst[1], rep.normal_in_plane);
                worst[2] = std::max(worst[2], rep.shape_off_identity);
                worst[3] = std::max(worst[3], rep.gext_orth);
                ++got;
                ++points;
            }
        }
    }
    out.checks.push_back({"plane_compare(sym, antisym)", worst[0], 1e-6});
    out.checks.push_back({"normal in plane", worst[1], 1e-6});
    out.checks.push_back({"shape operator off identity", worst[2], 1e-6});
    out.checks.push_back({"extended-Blaschke orthogonality", worst[3], 1e-6});
    out.checks.push_back({"points checked", static_cast<double>(points), 30, true});
    return out;
}

// ---- 9: product of parabolas ---------------------------------------------

CriterionResult criterion_product() {
    CriterionResult out{9, "product of parabolas: flat connection, R = 0, semiumbilic", {}};
    const ImmersionSpec spec = catalog("product-parabolas");
    double worst_a = 0, worst_r = 0, worst_angle = 0;
    bool all_semi = true;
    for (double u : {-0.5, 0.1, 0.6}) {
        for (double v : {-0.4, 0.25, 0.7}) {
            const SurfaceJet jet = eval_jet3(spec, u, v);
            PipelineChoices choices;
            const MetricField mf = resolve_metric_field(spec, jet, choices);
            const FramePoint fp = build_frame_point(jet, mf, second_derivative_sigma0(jet));
            const ConnectionData cd = connection_data(fp);
            for (double ai : cd.a) worst_a = std::max(worst_a, std::abs(ai));
            ShapeData sd;
            sd.S1 = cd.S1;
            sd.S2 = cd.S2;
            worst_r = std::max(worst_r, normal_curvature(sd, cd.b, cd.c).max_abs());
            all_semi = all_semi && semiumbilic_test(sd).semiumbilic;
            worst_angle =
                std::max(worst_angle, plane_compare(antisymmetric_plane(cd, fp), symmetric_plane(cd, fp)));
        }
    }
    out.checks.push_back({"max |a_i|", worst_a, 1e-12});
    out.checks.push_back({"max |R|", worst_r, 1e-12});
    out.checks.push_back({"plane angle", worst_angle, 1e-9});
    out.checks.push_back({"semiumbilic everywhere", all_semi ? 1.0 : 0.0, 1, true});
    return out;
}

// ---- 10: Nomizu-Vrancken fixture ----------------------------------------------------

CriterionResult criterion_nv_fixture() {
    CriterionResult out{10, "Nomizu-Vrancken fixture: vertical leaves the plane", {}};
    const double at00 = nv_fixture_residual(0, 0);
    const double at11 = nv_fixture_residual(1, 1);
    out.checks.push_back({"residual at (0,0)", at00, 1e-10});
    out.checks.push_back({"residual at (1,1)", at11, 0.05, true});
    out.checks.push_back({"regression drift at (1,1)", std::abs(at11 - kNvResidualAt11), 1e-12});
    return out;
}

// ---- 11: asymptotics -------------------------------------------------------

CriterionResult criterion_asymptotics() {
    CriterionResult out{11, "binormal residuals, sweep oracle, coordinate lines", {}};
    std::mt19937 gen(66000);
    std::uniform_real_distribution<double> coef(-2, 2);
    double worst_res = 0;
    int sweep_mismatch = 0;
    for (int t = 0; t < 500; ++t) {
        const Mat2Sym a{coef(gen), coef(gen), coef(gen)};
        const Mat2Sym b{coef(gen), coef(gen), coef(gen)};
        const double scale = a.max_abs() + b.max_abs();
        const AsymptoticData ad = binormals(a, b);
        for (const auto& e : ad.entries) {
            const Mat2Sym m = height_hessian(e.binormal.r, e.binormal.s, a, b);
            worst_res = std::max(worst_res, std::abs(m.det()) / (scale * scale));
            if (!e.any_direction) {
                const double r1 = m.xx * e.direction[0] + m.xy * e.direction[1];
                const double r2 = m.xy * e.direction[0] + m.yy * e.direction[1];
                worst_res = std::max(worst_res, std::hypot(r1, r2) / scale);
            }
        }
        // sweep oracle: count det sign changes over half the circle
        const PencilRoots pr = pencil_roots(a, b);
        if (pr.double_root || pr.all_pairs) continue;
        int changes = 0;
        double prev = (std::cos(0.0) * a + std::sin(0.0) * b).det();
        for (int i = 1; i <= 720; ++i) {
            const double phi = M_PI * i / 720;
            const double cur = (std::cos(phi) * a + std::sin(phi) * b).det();
            if (prev * cur < 0) ++changes;
            prev = cur;
        }
        if (changes != static_cast<int>(pr.roots.size())) ++sweep_mismatch;
    }
    out.checks.push_back({"max pencil residual", worst_res, 1e-9});
    out.checks.push_back({"sweep-oracle mismatches", static_cast<double>(sweep_mismatch), 0});

    const ImmersionSpec spec = catalog("product-parabolas");
    const Polyline l0 = integrate_asymptotic_line(spec, 0.1, 0.2, 0, 0.02, 0.6);
    const Polyline l1 = integrate_asymptotic_line(spec, 0.1, 0.2, 1, 0.02, 0.6);
    double dev = 0;
    for (const auto& pt : l0.points) dev = std::max(dev, std::abs(pt.v - 0.2));
    for (const auto& pt : l1.points) dev = std::max(dev, std::abs(pt.u - 0.1));
    out.checks.push_back({"coordinate-line deviation", dev, 1e-8});
    return out;
}

// ---- 12: normal-curvature equivalence --------------------------------------

CriterionResult criterion_equivalence() {
    CriterionResult out{12, "normal-curvature equivalence on 500 margined inputs", {}};
    std::mt19937 gen(67000);
    std::uniform_real_distribution<double> coef(-2, 2);
    std::uniform_real_distribution<double> mag(0.3, 1.5);
    int processed = 0, disagreements = 0, lhs_true = 0;
    for (int t = 0; t < 4000 && processed < 500; ++t) {
        ShapeData sd;
        double b, c;
        const int kind = t % 4;
        if (kind == 0) {
            sd.S1 = Mat2{coef(gen), coef(gen), coef(gen), coef(gen)};
            sd.S2 = Mat2{coef(gen), coef(gen), coef(gen), coef(gen)};
            b = coef(gen);
            c = coef(gen);
        } else if (kind == 1) {
            b = mag(gen) * (t % 8 < 4 ? 1 : -1);
            c = coef(gen);
            const double l1 = coef(gen), l2 = coef(gen);
            sd.S1 = Mat2{l1, l2, l2, l1 + l2 * c / b};
            sd.S2 = Mat2{1, 0, 0, 1};
        } else if (kind == 2) {
            const double l2 = coef(gen), m2 = coef(gen);
            sd.S1 = Mat2{coef(gen), l2, l2, coef(gen)};
            sd.S2 = Mat2{coef(gen), m2, m2, coef(gen)};
            b = coef(gen);
            c = coef(gen);
        } else {
            sd.S1 = Mat2{coef(gen), 0, 0, coef(gen)};
            const double m = coef(gen);
            sd.S2 = Mat2{m, 0, 0, m};
            b = 0;
            c = 0;
        }
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
        ++processed;
        if (!rep.agree()) ++disagreements;
        if (rep.lhs) ++lhs_true;
    }
    out.checks.push_back({"disagreements", static_cast<double>(disagreements), 0});
    out.checks.push_back({"inputs processed", static_cast<double>(processed), 500, true});
    out.checks.push_back({"flat cases seen", static_cast<double>(lhs_true), 50, true});
    return out;
}

// ---- 13: jet engine vs finite differences ----------------------------------

CriterionResult criterion_jets() {
    CriterionResult out{13, "jet partials vs finite differences on the catalog", {}};
    struct Entry {
        const char* name;
        CatalogArgs args;
        double u, v;
    };
    const Entry entries[] = {
        {"paraboloid-graph", {.g = "u*v"}, 0.4, -0.3},
        {"hyperboloid-graph", {.g = "(u^2-v)/3"}, 0.2, 0.5},
        {"q13-graph", {.g = "1+u*v/2"}, 1.1, 0.9},
        {"ellipsoid-graph", {.g = "(u+v)/4"}, 0.1, -0.2},
        {"product-parabolas", {}, 0.3, 0.8},
    };
    const int orders[10][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}};
    double worst = 0;
    for (const Entry& e : entries) {
        const ImmersionSpec spec = catalog(e.name, e.args);
        const SurfaceJet jet = eval_jet3(spec, e.u, e.v);
        for (int comp = 0; comp < 4; ++comp) {
            auto f = [&](double uu, double vv) {
                const std::array<double, 2> at{uu, vv};
                return eval_expr<double>(spec.components[static_cast<std::size_t>(comp)],
                                         std::span<const double>(at));
            };
            // Richardson-extrapolated 4th-order stencils
            for (int k = 0; k < 10; ++k) {
                const int iu = orders[k][0], iv = orders[k][1];
                auto stencil = [&](double h) {
                    auto d1 = [&](auto&& self, double uu, double vv, int du, int dv) -> double {
                        if (du + dv == 0) return f(uu, vv);
                        if (du > 0) {
                            auto g = [&](double x) { return self(self, x, vv, du - 1, dv); };
                            return (-g(uu + 2 * h) + 8 * g(uu + h) - 8 * g(uu - h) + g(uu - 2 * h)) / (12 * h);
                        }
                        auto g = [&](double x) { return self(self, uu, x, du, dv - 1); };
                        return (-g(vv + 2 * h) + 8 * g(vv + h) - 8 * g(vv - h) + g(vv - 2 * h)) / (12 * h);
                    };
                    return d1(d1, e.u, e.v, iu, iv);
                };
                const double coarse = stencil(5e-3), fine = stencil(2.5e-3);
                const double fd = (16 * fine - coarse) / 15;
                const double got = jet.jets[comp].at(iu, iv);
                worst = std::max(worst, std::abs(got - fd) / std::max({1.0, std::abs(got), std::abs(fd)}));
            }
        }
    }
    out.checks.push_back({"max relative error", worst, 1e-6});
    return out;
}

// ---- 14: Q(1,3) semiumbilic contrast ----------------------------------------

CriterionResult criterion_q13_contrast() {
    CriterionResult out{14, "Q(1,3) semiumbilic contrast pair", {}};
    std::mt19937 gen(68000);
    std::uniform_real_distribution<double> pos(0.8, 1.2);

    const ImmersionSpec good = catalog("q13-graph", {.g = "u*v"});
    double worst_minor = 0;
    int good_pts = 0;
    for (int t = 0; t < 8; ++t) {
        const double u = pos(gen), v = pos(gen);
        for (bool antisym : {true, false}) {
            try {
                const CorrectedBundleData cbd = corrected_bundle_data(good, u, v, antisym);
                worst_minor = std::max(worst_minor, semiumbilic_test(cbd.sd).minor_norm);
                ++good_pts;
            } catch (const Error&) {
            }
        }
    }
    const ImmersionSpec bad = catalog("q13-graph", {.g = "v^2+u^3"});
    int bad_total = 0, bad_not_semi = 0;
    for (int t = 0; t < 10; ++t) {
        const double u = pos(gen), v = pos(gen);
        try {
            const CorrectedBundleData cbd = corrected_bundle_data(bad, u, v, true);
            ++bad_total;
            if (semiumbilic_test(cbd.sd).minor_norm > 1e-3) ++bad_not_semi;
        } catch (const Error&) {
        }
    }
    out.checks.push_back({"semiumbilic side: max minor norm", worst_minor, 1e-9});
    out.checks.push_back({"semiumbilic points sampled", static_cast<double>(good_pts), 12, true});
    out.checks.push_back(
        {"non-semiumbilic fraction (pct)",
         bad_total > 0 ? 100.0 * bad_not_semi / bad_total : 0.0, 90, true});
    return out;
}

}  // namespace

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "metrics") return {1, 2, 3, 13};
    if (suite == "frames") return {4, 5, 6};
    if (suite == "equiaffine") return {7};
    if (suite == "asymptotics") return {11};
    if (suite == "hyperquadrics") return {8, 14};
    if (suite == "fixtures") return {9, 10, 12};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
    throw Error("unknown verification suite '" + suite + "'");
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, std::optional<double> tol_override) {
    std::vector<CriterionResult> results;
    for (int id : ids) {
        CriterionResult r;
        switch (id) {
            case 1: r = criterion_paraboloid_metric(); break;
            case 2: r = criterion_hyperboloid_metric(); break;
            case 3: r = criterion_q13_blaschke(); break;
            case 4: r = criterion_distinguished_frame(); break;
            case 5: r = criterion_metric_independence(); break;
            case 6: r = criterion_gperp(); break;
            case 7: r = criterion_equiaffine(); break;
            case 8: r = criterion_hyperquadric_suite(); break;
            case 9: r = criterion_product(); break;
            case 10: r = criterion_nv_fixture(); break;
            case 11: r = criterion_asymptotics(); break;
            case 12: r = criterion_equivalence(); break;
            case 13: r = criterion_jets(); break;
            case 14: r = criterion_q13_contrast(); break;
            default: throw Error("unknown criterion id " + std::to_string(id));
        }
        if (tol_override) {
            for (SubCheck& c : r.checks)
                if (!c.at_least) c.tolerance = *tol_override;
        }
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace affine4
