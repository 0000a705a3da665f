#include "affine4/asymptotics.hpp"

#include <cmath>
#include <optional>

namespace affine4 {

AsymptoticData binormals(const Mat2Sym& a, const Mat2Sym& b) {
    const PencilRoots roots = pencil_roots(a, b);
    AsymptoticData out;
    out.all_directions = roots.all_pairs;
    if (roots.all_pairs) {
        return out;
    }
    const double scale = a.max_abs() + b.max_abs();
    for (const HomPair& p : roots.roots) {
        AsymptoticEntry e;
        e.binormal = p;
        const Mat2Sym m = height_hessian(p.r, p.s, a, b);
        if (m.max_abs() <= 1e-12 * scale) {
            // corank-2 root: every tangent direction is asymptotic
            e.any_direction = true;
            out.all_directions = true;
        } else {
            const HomPair k = kernel_direction(m);
            e.direction = {k.r, k.s};
        }
        out.entries.push_back(e);
    }
    return out;
}

bool inflection_test(double b, double c) { return 4.0 * b * b + c * c <= 1e-10; }

Mat2Sym height_hessian(double r, double s, const Mat2Sym& a, const Mat2Sym& b) {
    if (r == 0.0 && s == 0.0) throw ZeroCovector("height_hessian needs (r,s) != 0");
    return r * a + s * b;
}

OdeCoeffs asymptotic_ode_coeffs(const Mat2Sym& A, const Mat2Sym& B) {
    const double a = A.xx, b = A.xy, c = A.yy;
    const double e = B.xx, f = B.xy, g = B.yy;
    return {b * g - c * f, a * g - c * e, a * f - b * e};
}

namespace {

struct FieldSample {
    std::array<double, 2> dir;  // unit parameter velocity
    bool inflection = false;
    bool coalesced = false;
    bool not_convex = false;
};

// Direction of the requested branch at (u, v). When ref is set, the root
// whose tangent best aligns with ref is chosen and the sign is matched;
// otherwise the branch index selects among the s/r-ordered roots.
FieldSample sample_field(const ImmersionSpec& spec, double u, double v, int branch,
                         const std::optional<std::array<double, 2>>& ref) {
    FieldSample out;
    SurfaceJet jet;
    MetricField mf;
    FramePoint fp;
    try {
        jet = eval_jet3(spec, u, v);
        if (spec.xi) {
            const std::array<Jet3, 2> vars = {Jet3::variable_u(u), Jet3::variable_v(v)};
            for (int k = 0; k < 4; ++k) mf.xi[k] = eval_expr<Jet3>((*spec.xi)[static_cast<std::size_t>(k)], vars);
            mf.source = MetricField::Source::User;
        } else {
            mf = select_metric_field(jet);
        }
        fp = build_frame_point(jet, mf);
    } catch (const Error&) {
        out.not_convex = true;
        return out;
    }
    const ConnectionData cd = connection_data(fp);
    if (inflection_test(cd.b, cd.c)) {
        out.inflection = true;
        return out;
    }
    const Mat2Sym A{0.0, cd.b, cd.c};
    const Mat2Sym B{1.0, 0.0, 1.0};
    // discriminant of s^2 + c r s - b^2 r^2
    if (cd.c * cd.c + 4.0 * cd.b * cd.b < 1e-12) {
        out.coalesced = true;
        return out;
    }
    const AsymptoticData ad = binormals(A, B);
    if (ad.entries.size() < 2) {
        out.coalesced = true;
        return out;
    }

    auto param_dir = [&](const AsymptoticEntry& e) -> std::array<double, 2> {
        const double w1 = e.direction[0], w2 = e.direction[1];
        const double du = w1 * fp.X1.a.value() + w2 * fp.X2.a.value();
        const double dv = w1 * fp.X1.b.value() + w2 * fp.X2.b.value();
        const double n = std::hypot(du, dv);
        return {du / n, dv / n};
    };

    if (!ref) {
        out.dir = param_dir(ad.entries[static_cast<std::size_t>(branch)]);
        return out;
    }
    double best = -1.0;
    std::array<double, 2> bestdir{1, 0};
    for (const AsymptoticEntry& e : ad.entries) {
        const auto d = param_dir(e);
        const double align = std::abs(d[0] * (*ref)[0] + d[1] * (*ref)[1]);
        if (align > best) {
            best = align;
            bestdir = d;
        }
    }
    if (bestdir[0] * (*ref)[0] + bestdir[1] * (*ref)[1] < 0.0) {
        bestdir = {-bestdir[0], -bestdir[1]};
    }
    out.dir = bestdir;
    return out;
}

}  // namespace

Polyline integrate_asymptotic_line(const ImmersionSpec& spec, double u0, double v0, int branch, double step,
                                   double arclen) {
    if (!(step > 0.0)) throw Error("integration step must be positive");
    if (branch != 0 && branch != 1) throw Error("branch must be 0 or 1");

    Polyline line;
    line.branch = branch;

    if (!spec.domain.contains(u0, v0)) throw Error("seed outside the parameter domain");
    const FieldSample seed = sample_field(spec, u0, v0, branch, std::nullopt);
    if (seed.inflection) throw SeedAtInflection("asymptotic line seeded at an inflection");
    if (seed.not_convex) throw NotLocallyConvex("asymptotic line seeded at a non-convex point");
    if (seed.coalesced) throw SeedAtInflection("asymptotic branches coalesce at the seed");

    double u = u0, v = v0;
    std::array<double, 2> ref = seed.dir;
    line.points.push_back({u, v, eval_jet3(spec, u, v).X()});

    double travelled = 0.0;
    while (travelled < arclen) {
        // RK4 with continuation against the step's incoming direction
        auto stage = [&](double su, double sv) -> std::optional<FieldSample> {
            if (!spec.domain.contains(su, sv)) return std::nullopt;
            FieldSample s = sample_field(spec, su, sv, branch, ref);
            return s;
        };
        const auto k1 = stage(u, v);
        if (!k1 || k1->inflection || k1->coalesced || k1->not_convex) {
            line.termination = !k1             ? "boundary"
                               : k1->inflection ? "inflection"
                               : k1->coalesced  ? "umbilic-like"
                                                : "not-locally-convex";
            return line;
        }
        const auto k2 = stage(u + 0.5 * step * k1->dir[0], v + 0.5 * step * k1->dir[1]);
        const auto k3 = k2 ? stage(u + 0.5 * step * k2->dir[0], v + 0.5 * step * k2->dir[1]) : std::nullopt;
        const auto k4 = k3 ? stage(u + step * k3->dir[0], v + step * k3->dir[1]) : std::nullopt;
        if (!k2 || !k3 || !k4 || k2->inflection || k3->inflection || k4->inflection || k2->coalesced ||
            k3->coalesced || k4->coalesced || k2->not_convex || k3->not_convex || k4->not_convex) {
            bool infl = (k2 && k2->inflection) || (k3 && k3->inflection) || (k4 && k4->inflection);
            bool coal = (k2 && k2->coalesced) || (k3 && k3->coalesced) || (k4 && k4->coalesced);
            bool nc = (k2 && k2->not_convex) || (k3 && k3->not_convex) || (k4 && k4->not_convex);
            line.termination = infl ? "inflection" : coal ? "umbilic-like" : nc ? "not-locally-convex" : "boundary";
            return line;
        }
        const double du =
            (k1->dir[0] + 2.0 * k2->dir[0] + 2.0 * k3->dir[0] + k4->dir[0]) / 6.0;
        const double dv =
            (k1->dir[1] + 2.0 * k2->dir[1] + 2.0 * k3->dir[1] + k4->dir[1]) / 6.0;
        const double nu = u + step * du;
        const double nv = v + step * dv;
        if (!spec.domain.contains(nu, nv)) {
            line.termination = "boundary";
            return line;
        }
        u = nu;
        v = nv;
        ref = k1->dir;
        travelled += step;
        line.points.push_back({u, v, eval_jet3(spec, u, v).X()});
    }
    line.termination = "arclen";
    return line;
}

}  // namespace affine4
