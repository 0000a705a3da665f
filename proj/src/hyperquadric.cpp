#include "affine4/hyperquadric.hpp"

#include <algorithm>
#include <cmath>

namespace affine4 {

namespace {

ExprPtr parse_xyz(const std::string& text) { return parse_expr(text, kHypersurfaceVars); }

void fill_derivatives(HypersurfaceSpec& spec) {
    for (int i = 0; i < 3; ++i) spec.fd[static_cast<std::size_t>(i)] = differentiate(spec.f, i);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            spec.fdd[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                differentiate(spec.fd[static_cast<std::size_t>(i)], j);
}

// real fifth root, sign preserving
double fifth_root(double x) { return std::copysign(std::pow(std::abs(x), 0.2), x); }

Jet3 fifth_root(const Jet3& a) {
    const double v = a.value();
    if (v == 0.0) throw DomainError("fifth root of zero-value jet");
    const double r = fifth_root(v);
    return compose(a, r, r / (5.0 * v), -2.0 * r / (25.0 * v * v), 6.0 * r / (125.0 * v * v * v));
}

Jet3 fourth_root_pos(const Jet3& a) { return sqrt(sqrt(a)); }

}  // namespace

HypersurfaceSpec hypersurface(QuadricKind kind) {
    HypersurfaceSpec spec;
    spec.kind = kind;
    switch (kind) {
        case QuadricKind::Paraboloid: spec.f = parse_xyz("(x^2+y^2+z^2)/2"); break;
        case QuadricKind::Ellipsoid: spec.f = parse_xyz("sqrt(1-x^2-y^2-z^2)"); break;
        case QuadricKind::Hyperboloid: spec.f = parse_xyz("sqrt(1+x^2+y^2+z^2)"); break;
        case QuadricKind::Q13:
            spec.f = parse_xyz("1/(x*y*z)");
            spec.scaled_frame = true;
            break;
    }
    fill_derivatives(spec);
    return spec;
}

HypersurfaceSpec hypersurface_graph(const std::string& f_text) {
    HypersurfaceSpec spec;
    spec.f = parse_xyz(f_text);
    fill_derivatives(spec);
    return spec;
}

QuadricKind quadric_from_name(const std::string& name) {
    if (name == "paraboloid") return QuadricKind::Paraboloid;
    if (name == "ellipsoid") return QuadricKind::Ellipsoid;
    if (name == "hyperboloid") return QuadricKind::Hyperboloid;
    if (name == "q13") return QuadricKind::Q13;
    throw UnknownQuadric(name);
}

const char* quadric_name(QuadricKind kind) {
    switch (kind) {
        case QuadricKind::Paraboloid: return "paraboloid";
        case QuadricKind::Ellipsoid: return "ellipsoid";
        case QuadricKind::Hyperboloid: return "hyperboloid";
        case QuadricKind::Q13: return "q13";
    }
    return "?";
}

Blaschke3 blaschke_graph_metric(const HypersurfaceSpec& n, const std::array<double, 3>& point) {
    const std::array<double, 3> p = point;
    std::array<double, 3> fd{};
    double hess[3][3];
    for (int i = 0; i < 3; ++i) {
        fd[static_cast<std::size_t>(i)] =
            eval_expr<double>(n.fd[static_cast<std::size_t>(i)], std::span<const double>(p));
        for (int j = 0; j < 3; ++j)
            hess[i][j] = eval_expr<double>(n.fdd[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                           std::span<const double>(p));
    }
    std::array<double, 3> scale{1, 1, 1};
    if (n.scaled_frame) scale = p;

    double H[3][3];
    const double c123 = scale[0] * scale[1] * scale[2];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            H[i][j] = c123 * scale[static_cast<std::size_t>(i)] * scale[static_cast<std::size_t>(j)] * hess[i][j];

    // definite up to overall sign: leading principal minors all positive
    // (positive definite) or alternating starting negative (negative definite)
    const double m1 = H[0][0];
    const double m2 = H[0][0] * H[1][1] - H[0][1] * H[1][0];
    const double m3 = H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1]) -
                      H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0]) +
                      H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]);
    const bool pos = m1 > 0 && m2 > 0 && m3 > 0;
    const bool neg = m1 < 0 && m2 > 0 && m3 < 0;
    if (!pos && !neg) throw NotConvexHypersurface("H is not definite at the point");

    Blaschke3 out;
    out.detH = m3;
    const double root = fifth_root(m3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = H[i][j] / root;
    for (int i = 0; i < 3; ++i) {
        Vec4 e{};
        e[i] = scale[static_cast<std::size_t>(i)];
        e[3] = scale[static_cast<std::size_t>(i)] * fd[static_cast<std::size_t>(i)];
        out.frame[static_cast<std::size_t>(i)] = e;
    }
    return out;
}

namespace {

struct FrameAlongM {
    std::array<JetVec4, 3> F;     // hypersurface frame fields along M
    std::array<Jet3, 3> c;        // frame scalings
    Jet3 H[3][3];                 // second fundamental bracket form in F
};

FrameAlongM hypersurface_frame_along(const SurfaceJet& jet, const HypersurfaceSpec& n) {
    const std::array<Jet3, 3> xyz = {jet.jets[0], jet.jets[1], jet.jets[2]};
    const Jet3 w = jet.jets[3];
    const Jet3 f = eval_expr<Jet3>(n.f, std::span<const Jet3>(xyz));
    if (std::abs(w.value() - f.value()) > 1e-10 * (1.0 + std::abs(w.value())))
        throw NotOnHypersurface("surface point is not on the hypersurface");

    FrameAlongM out;
    std::array<Jet3, 3> fd;
    Jet3 hess[3][3];
    for (int i = 0; i < 3; ++i) {
        fd[static_cast<std::size_t>(i)] =
            eval_expr<Jet3>(n.fd[static_cast<std::size_t>(i)], std::span<const Jet3>(xyz));
        for (int j = 0; j < 3; ++j)
            hess[i][j] = eval_expr<Jet3>(n.fdd[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                         std::span<const Jet3>(xyz));
    }
    for (int i = 0; i < 3; ++i)
        out.c[static_cast<std::size_t>(i)] = n.scaled_frame ? xyz[static_cast<std::size_t>(i)] : Jet3(1.0);

    const Jet3 c123 = out.c[0] * out.c[1] * out.c[2];
    for (int i = 0; i < 3; ++i) {
        JetVec4 e;
        e[i] = out.c[static_cast<std::size_t>(i)];
        e[3] = out.c[static_cast<std::size_t>(i)] * fd[static_cast<std::size_t>(i)];
        out.F[static_cast<std::size_t>(i)] = e;
        for (int j = 0; j < 3; ++j)
            out.H[i][j] = c123 * out.c[static_cast<std::size_t>(i)] * out.c[static_cast<std::size_t>(j)] * hess[i][j];
    }
    return out;
}

// coordinates of a tangent-to-N field in the frame F (first three slots of
// F are diagonal by construction)
std::array<Jet3, 3> frame_coords(const FrameAlongM& fr, const JetVec4& w) {
    return {w[0] / fr.c[0], w[1] / fr.c[1], w[2] / fr.c[2]};
}

Jet3 h_bilinear(const FrameAlongM& fr, const std::array<Jet3, 3>& p, const std::array<Jet3, 3>& q) {
    Jet3 acc(0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            acc += p[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(j)] * fr.H[i][j];
    return acc;
}

}  // namespace

BlaschkeRestriction blaschke_restriction(const SurfaceJet& jet, const HypersurfaceSpec& n) {
    const FrameAlongM fr = hypersurface_frame_along(jet, n);
    const JetVec4 mu = jet.field_du();
    const JetVec4 mv = jet.field_dv();
    const auto pu = frame_coords(fr, mu);
    const auto pv = frame_coords(fr, mv);

    // tangent completion: hypersurface frame vector most transversal to T_pM
    const Jet3 g11 = dot(mu, mu), g12 = dot(mu, mv), g22 = dot(mv, mv);
    const Jet3 gdet = g11 * g22 - g12 * g12;
    auto project_out = [&](const JetVec4& w, std::array<Jet3, 2>& coeffs) {
        const Jet3 b1 = dot(mu, w), b2 = dot(mv, w);
        coeffs[0] = (b1 * g22 - b2 * g12) / gdet;
        coeffs[1] = (g11 * b2 - g12 * b1) / gdet;
        JetVec4 r;
        for (int k = 0; k < 4; ++k) r[k] = w[k] - coeffs[0] * mu[k] - coeffs[1] * mv[k];
        return r;
    };
    int best = 0;
    double best_res = -1.0;
    for (int k = 0; k < 3; ++k) {
        std::array<Jet3, 2> cf;
        const double res = norm(value_of(project_out(fr.F[static_cast<std::size_t>(k)], cf))) /
                           std::max(1e-300, norm(value_of(fr.F[static_cast<std::size_t>(k)])));
        if (res > best_res) {
            best_res = res;
            best = k;
        }
    }
    std::array<Jet3, 2> proj_coeffs;
    const JetVec4 X3 = project_out(fr.F[static_cast<std::size_t>(best)], proj_coeffs);
    std::array<Jet3, 3> p3;
    for (int i = 0; i < 3; ++i) {
        Jet3 q(best == i ? 1.0 : 0.0);
        p3[static_cast<std::size_t>(i)] = q - proj_coeffs[0] * pu[static_cast<std::size_t>(i)] -
                                          proj_coeffs[1] * pv[static_cast<std::size_t>(i)];
    }

    // Arguments in the frame u' = (M_u, M_v, X3), bracket still over F:
    // Hmix = P^T H_F P with P the coordinate change; the fully u'-framed
    // H_{u'}(Y,Z) = [M_u, M_v, X3, D_Z Y] equals detP * Hmix, so
    // det3 H_{u'} = detP^5 * det3 H_F.
    const std::array<Jet3, 3>* basis[3] = {&pu, &pv, &p3};
    Jet3 Hmix[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Hmix[i][j] = h_bilinear(fr, *basis[i], *basis[j]);
    const Jet3 detP = pu[0] * (pv[1] * p3[2] - pv[2] * p3[1]) - pv[0] * (pu[1] * p3[2] - pu[2] * p3[1]) +
                      p3[0] * (pu[1] * pv[2] - pu[2] * pv[1]);
    const Jet3 det3_mix = Hmix[0][0] * (Hmix[1][1] * Hmix[2][2] - Hmix[1][2] * Hmix[2][1]) -
                          Hmix[0][1] * (Hmix[1][0] * Hmix[2][2] - Hmix[1][2] * Hmix[2][0]) +
                          Hmix[0][2] * (Hmix[1][0] * Hmix[2][1] - Hmix[1][1] * Hmix[2][0]);
    const Jet3 det3_F = det3_mix / (detP * detP);
    const Jet3 det3_uprime = detP * detP * detP * det3_mix;

    // G on M with xi = X3 via the frames-module definition
    const auto Gj = metric_G_jets(jet, X3);
    const Jet3 detG = Gj[0] * Gj[2] - Gj[1] * Gj[1];
    if (!(detG.value() > 0.0))
        throw NotPositiveDefinite("det G <= 0 in the Blaschke restriction");

    Jet3 lambda = fifth_root(det3_uprime) / fourth_root_pos(detG);
    // xi = -X3 / lambda^2 up to the sign that makes G_xi positive definite
    // (lambda < 0 happens on concave charts such as the ellipsoid one)
    const double sign = lambda.value() > 0.0 ? 1.0 : -1.0;
    const Jet3 il2 = sign / (lambda * lambda);

    BlaschkeRestriction out;
    out.X3 = X3;
    for (int k = 0; k < 4; ++k) out.xi[k] = -(il2 * X3[k]);

    // Blaschke metric values: frame-independent form evaluated on M-tangents
    const double root5 = fifth_root(det3_F.value());
    out.g_on_M = {Hmix[0][0].value() / root5, Hmix[0][1].value() / root5, Hmix[1][1].value() / root5};
    for (int k = 0; k < 3; ++k) out.n_frame[static_cast<std::size_t>(k)] = value_of(fr.F[static_cast<std::size_t>(k)]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.G_frame[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                fr.H[i][j].value() / root5;
    return out;
}

RestrictResult restrict_blaschke_xi(const ImmersionSpec& m, const HypersurfaceSpec& n, double u, double v) {
    const SurfaceJet jet = eval_jet3(m, u, v);
    const BlaschkeRestriction r = blaschke_restriction(jet, n);
    return {r.g_on_M, value_of(r.xi)};
}

Vec4 quadric_affine_normal(QuadricKind kind, const Vec4& point) {
    if (kind == QuadricKind::Paraboloid) return {0, 0, 0, 1};
    return point;  // proper affine hyperspheres centered at the origin
}

HyperquadricReport hyperquadric_check(const ImmersionSpec& m, const HypersurfaceSpec& n, double u, double v) {
    if (!n.kind) throw UnknownQuadric("hyperquadric_check needs a named quadric");
    const SurfaceJet jet = eval_jet3(m, u, v);
    const BlaschkeRestriction restr = blaschke_restriction(jet, n);

    MetricField mf;
    mf.xi = restr.xi;
    mf.source = MetricField::Source::Blaschke;
    const FramePoint fp = build_frame_point(jet, mf);
    const ConnectionData cd = connection_data(fp);

    const PlaneAtPoint anti = antisymmetric_plane(cd, fp);
    const PlaneAtPoint sym = symmetric_plane(cd, fp);

    HyperquadricReport rep;
    rep.plane_angle = plane_compare(anti, sym);

    const Vec4 y = quadric_affine_normal(*n.kind, jet.X());
    rep.normal_in_plane = std::max(contains_direction(anti, y), contains_direction(sym, y));

    // shape operator along the quadric normal field, in the corrected bundle
    const JetVec4 yfield = (*n.kind == QuadricKind::Paraboloid) ? to_jets(Vec4{0, 0, 0, 1}) : jet.jets;
    const Vec4 x1 = value_of(fp.X1.vec), x2 = value_of(fp.X2.vec);
    Mat2 sy;
    {
        const auto d1 = frame_decompose(value_of(dir_derivative(yfield, fp.X1)), x1, x2, anti.b1, anti.b2);
        const auto d2 = frame_decompose(value_of(dir_derivative(yfield, fp.X2)), x1, x2, anti.b1, anti.b2);
        sy = Mat2{-d1[0], -d2[0], -d1[1], -d2[1]};
    }
    rep.shape_mu = 0.5 * sy.trace();
    const Mat2 dev{sy.m00 - rep.shape_mu, sy.m01, sy.m10, sy.m11 - rep.shape_mu};
    rep.shape_off_identity = dev.max_abs() / (1.0 + sy.max_abs());

    // extended Blaschke orthogonality: project xi_i' into T_pN along Y and
    // pair with the M-tangents under G
    const auto& F = restr.n_frame;
    auto gext_with_tangents = [&](const Vec4& w) {
        std::array<std::array<double, 4>, 4> mm;
        for (int i = 0; i < 4; ++i) mm[i] = {F[0][i], F[1][i], F[2][i], y[i]};
        const auto coords = solve_small<double>(4, mm, {w[0], w[1], w[2], w[3]});
        // M-tangent coordinates in the N-frame
        const Vec4 xu = jet.Xu(), xv = jet.Xv();
        auto tangent_coords = [&](const Vec4& t) {
            std::array<std::array<double, 4>, 4> tm;
            for (int i = 0; i < 4; ++i) tm[i] = {F[0][i], F[1][i], F[2][i], y[i]};
            return solve_small<double>(4, tm, {t[0], t[1], t[2], t[3]});
        };
        const auto cu = tangent_coords(xu);
        const auto cv = tangent_coords(xv);
        double worst = 0.0;
        for (const auto& t : {cu, cv}) {
            double acc = 0.0;
            double tn = 0.0, wn = 0.0;
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    acc += coords[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(j)] *
                           restr.G_frame[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    tn += t[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(j)] *
                          restr.G_frame[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    wn += coords[static_cast<std::size_t>(i)] * coords[static_cast<std::size_t>(j)] *
                          restr.G_frame[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                }
            }
            worst = std::max(worst, std::abs(acc) / std::sqrt(std::abs(tn) * (1.0 + std::abs(wn))));
        }
        return worst;
    };
    rep.gext_orth = std::max(gext_with_tangents(anti.b1), gext_with_tangents(anti.b2));
    return rep;
}

std::pair<Vec4, Vec4> nv_fixture_plane(double u, double v) {
    const double u2 = u * u, v2 = v * v;
    const double s1 = 1.0 / (12.0 * std::pow(1.0 + u2, 2.0 / 3.0) * std::pow(1.0 + v2, 2.0 / 3.0));
    const Vec4 nu1 = s1 * Vec4{u, v, 2.0 * u * v, 12.0 + 3.0 * v2 + u2 * (13.0 + 14.0 * v2)};
    const double s2 = 1.0 / (12.0 * std::pow((1.0 + u2) * (1.0 + v2), 1.0 / 6.0));
    const Vec4 nu2 = s2 * Vec4{5.0 * v / (1.0 + v2), 5.0 * u / (1.0 + u2),
                               (-12.0 - 7.0 * v2 - 7.0 * u2 - 2.0 * u2 * v2) / ((1.0 + u2) * (1.0 + v2)),
                               -14.0 * u * v};
    return {nu1, nu2};
}

double nv_fixture_residual(double u, double v) {
    const auto [nu1, nu2] = nv_fixture_plane(u, v);
    return contains_direction(PlaneAtPoint{nu1, nu2}, Vec4{0, 0, 0, 1});
}

}  // namespace affine4
