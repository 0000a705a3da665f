#include "affine4/frames.hpp"

#include <algorithm>
#include <cmath>

namespace affine4 {

TangentField make_tangent(const SurfaceJet& jet, const Jet3& a, const Jet3& b) {
    TangentField t{a, b, {}};
    const JetVec4 xu = jet.field_du();
    const JetVec4 xv = jet.field_dv();
    for (int k = 0; k < 4; ++k) t.vec[k] = a * xu[k] + b * xv[k];
    return t;
}

JetVec4 dir_derivative(const JetVec4& field, const TangentField& along) {
    JetVec4 out;
    for (int k = 0; k < 4; ++k) out[k] = along.a * field[k].d_du() + along.b * field[k].d_dv();
    return out;
}

std::pair<JetVec4, JetVec4> euclidean_complement(const SurfaceJet& jet, ComplementChoice& choice) {
    const JetVec4 xu = jet.field_du();
    const JetVec4 xv = jet.field_dv();
    const Jet3 g11 = dot(xu, xu), g12 = dot(xu, xv), g22 = dot(xv, xv);

    // Euclidean projection of w onto span(X_u, X_v), as jets.
    auto project_out = [&](const JetVec4& w) {
        const Jet3 b1 = dot(xu, w), b2 = dot(xv, w);
        const Jet3 det = g11 * g22 - g12 * g12;
        const Jet3 c1 = (b1 * g22 - b2 * g12) / det;
        const Jet3 c2 = (g11 * b2 - g12 * b1) / det;
        JetVec4 r;
        for (int k = 0; k < 4; ++k) r[k] = w[k] - c1 * xu[k] - c2 * xv[k];
        return r;
    };

    if (!choice.set()) {
        std::array<double, 4> residual{};
        for (int i = 0; i < 4; ++i) {
            JetVec4 e = to_jets(Vec4{});
            e[i] = Jet3(1.0);
            const Vec4 r = value_of(project_out(e));
            residual[static_cast<std::size_t>(i)] = norm(r);
        }
        std::array<int, 4> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (residual[static_cast<std::size_t>(a)] != residual[static_cast<std::size_t>(b)])
                return residual[static_cast<std::size_t>(a)] > residual[static_cast<std::size_t>(b)];
            return a < b;
        });
        choice.idx = {order[0], order[1]};
    }

    auto basis_vector = [&](int i) {
        JetVec4 e = to_jets(Vec4{});
        e[i] = Jet3(1.0);
        return project_out(e);
    };
    JetVec4 w1 = basis_vector(choice.idx[0]);
    JetVec4 w2 = basis_vector(choice.idx[1]);

    const Jet3 n1norm = sqrt(dot(w1, w1));
    JetVec4 n1;
    for (int k = 0; k < 4; ++k) n1[k] = w1[k] / n1norm;
    const Jet3 c = dot(w2, n1);
    for (int k = 0; k < 4; ++k) w2[k] = w2[k] - c * n1[k];
    const Jet3 n2norm = sqrt(dot(w2, w2));
    JetVec4 n2;
    for (int k = 0; k < 4; ++k) n2[k] = w2[k] / n2norm;

    if (det4(xu, xv, n1, n2).value() < 0.0) {
        for (int k = 0; k < 4; ++k) n2[k] = -n2[k];
    }
    return {n1, n2};
}

Mat2Sym metric_G(const SurfaceJet& jet, const std::array<double, 2>& y1, const std::array<double, 2>& y2,
                 const Vec4& xi) {
    const Vec4 xu = jet.Xu(), xv = jet.Xv();
    const Vec4 xuu = jet.Xuu(), xuv = jet.Xuv(), xvv = jet.Xvv();
    const Vec4 Y1 = y1[0] * xu + y1[1] * xv;
    const Vec4 Y2 = y2[0] * xu + y2[1] * xv;
    // D_{Y_j} Y_i for constant coefficients
    auto second = [&](const std::array<double, 2>& yi, const std::array<double, 2>& yj) {
        return yi[0] * (yj[0] * xuu + yj[1] * xuv) + yi[1] * (yj[0] * xuv + yj[1] * xvv);
    };
    Mat2Sym G;
    G.xx = det4(Y1, Y2, second(y1, y1), xi);
    G.xy = det4(Y1, Y2, second(y1, y2), xi);
    G.yy = det4(Y1, Y2, second(y2, y2), xi);
    return G;
}

std::array<Jet3, 3> metric_G_jets(const SurfaceJet& jet, const JetVec4& xi) {
    const JetVec4 xu = jet.field_du();
    const JetVec4 xv = jet.field_dv();
    JetVec4 xuu, xuv, xvv;
    for (int k = 0; k < 4; ++k) {
        xuu[k] = jet.jets[k].d_du().d_du();
        xuv[k] = jet.jets[k].d_du().d_dv();
        xvv[k] = jet.jets[k].d_dv().d_dv();
    }
    return {det4(xu, xv, xuu, xi), det4(xu, xv, xuv, xi), det4(xu, xv, xvv, xi)};
}

Mat2Sym normalize_metric(const Mat2Sym& G) {
    const auto ev = G.eigenvalues();
    if (!(ev[0] > 1e-12 * std::abs(G.trace())))
        throw NotPositiveDefinite("G is not positive definite (not locally strictly convex for this xi)");
    const double root = std::sqrt(std::sqrt(G.det()));
    return {G.xx / root, G.xy / root, G.yy / root};
}

namespace {

bool positive_definite_probe(const Mat2Sym& m) { return m.det() > 0.0 && m.trace() > 0.0; }

}  // namespace

MetricField select_metric_field(const SurfaceJet& jet) {
    AutoXiChoice choice;
    return select_metric_field(jet, choice);
}

MetricField select_metric_field(const SurfaceJet& jet, AutoXiChoice& choice) {
    auto [n1, n2] = euclidean_complement(jet, choice.comp);

    if (!choice.set) {
        // Euclidean second fundamental forms along n1, n2
        const Vec4 v1 = value_of(n1), v2 = value_of(n2);
        const Vec4 xuu = jet.Xuu(), xuv = jet.Xuv(), xvv = jet.Xvv();
        const Mat2Sym h1{dot(v1, xuu), dot(v1, xuv), dot(v1, xvv)};
        const Mat2Sym h2{dot(v2, xuu), dot(v2, xuv), dot(v2, xvv)};

        const PencilRoots roots = pencil_roots(h1, h2);
        std::vector<double> bounds;
        for (const HomPair& p : roots.roots) {
            double phi = std::atan2(p.s, p.r);
            if (phi < 0.0) phi += 2.0 * M_PI;
            bounds.push_back(phi);
            bounds.push_back(phi < M_PI ? phi + M_PI : phi - M_PI);
        }
        std::sort(bounds.begin(), bounds.end());

        double mid = 0.0;
        bool found = false;
        if (roots.all_pairs) {
            found = false;  // determinant vanishes identically: never definite
        } else if (bounds.empty()) {
            found = false;  // det never vanishes on the circle: never definite (see tests)
        } else {
            const std::size_t n = bounds.size();
            for (std::size_t i = 0; i < n; ++i) {
                const double a = bounds[i];
                const double b = (i + 1 < n) ? bounds[i + 1] : bounds[0] + 2.0 * M_PI;
                const double m = 0.5 * (a + b);
                const Mat2Sym probe = std::cos(m) * h1 + std::sin(m) * h2;
                if (positive_definite_probe(probe)) {
                    mid = m;
                    found = true;
                    break;
                }
            }
        }
        if (!found) throw NotLocallyConvex("no transversal direction makes the pencil definite");

        // class correspondence: (r, s) ~ (b2, -b1), so xi ~ -s n1 + r n2.
        choice.coeffs = {-std::sin(mid), std::cos(mid)};
        choice.set = true;

        MetricField mf;
        mf.source = MetricField::Source::Auto;
        for (int k = 0; k < 4; ++k) mf.xi[k] = choice.coeffs[0] * n1[k] + choice.coeffs[1] * n2[k];
        const Mat2Sym G = metric_G(jet, {1, 0}, {0, 1}, value_of(mf.xi));
        if (!positive_definite_probe(G)) {
            choice.coeffs = {-choice.coeffs[0], -choice.coeffs[1]};
            for (int k = 0; k < 4; ++k) mf.xi[k] = -mf.xi[k];
            const Mat2Sym G2 = metric_G(jet, {1, 0}, {0, 1}, value_of(mf.xi));
            if (!positive_definite_probe(G2)) throw NotLocallyConvex("pencil midpoint did not yield definite G");
        }
        return mf;
    }

    MetricField mf;
    mf.source = MetricField::Source::Auto;
    for (int k = 0; k < 4; ++k) mf.xi[k] = choice.coeffs[0] * n1[k] + choice.coeffs[1] * n2[k];
    return mf;
}

std::pair<TangentField, TangentField> orthonormal_frame(const SurfaceJet& jet, const MetricField& xi) {
    const auto Gj = metric_G_jets(jet, xi.xi);
    // positive definiteness at the point
    (void)normalize_metric(Mat2Sym{Gj[0].value(), Gj[1].value(), Gj[2].value()});

    const Jet3 detG = Gj[0] * Gj[2] - Gj[1] * Gj[1];
    const Jet3 root = sqrt(sqrt(detG));
    const Jet3 g11 = Gj[0] / root, g12 = Gj[1] / root, g22 = Gj[2] / root;

    const Jet3 a1 = 1.0 / sqrt(g11);
    TangentField X1 = make_tangent(jet, a1, Jet3(0.0));
    // X_v - (g12/g11) X_u, normalized in g
    const Jet3 p = -(g12 / g11);
    const Jet3 nrm = sqrt(g22 - (g12 * g12) / g11);
    TangentField X2 = make_tangent(jet, p / nrm, 1.0 / nrm);
    return {X1, X2};
}

std::pair<JetVec4, JetVec4> distinguished_frame(const SurfaceJet& jet, const TangentField& X1, const TangentField& X2,
                                          const JetVec4& xi, const JetVec4& nu1, const JetVec4& nu2) {
    const JetVec4 xu = jet.field_du();
    const JetVec4 xv = jet.field_dv();
    JetVec4 xuu, xuv, xvv;
    for (int k = 0; k < 4; ++k) {
        xuu[k] = jet.jets[k].d_du().d_du();
        xuv[k] = jet.jets[k].d_du().d_dv();
        xvv[k] = jet.jets[k].d_dv().d_dv();
    }

    // Coordinate-frame second fundamental forms w.r.t. (nu1, nu2); h is
    // tensorial, so the frame h-coefficients follow by bilinearity and stay
    // one jet order higher than a frame-derivative route would give.
    auto decompose = [&](const JetVec4& w) {
        std::array<std::array<Jet3, 4>, 4> m;
        std::array<Jet3, 4> rhs;
        for (int r = 0; r < 4; ++r) {
            m[r] = {xu[r], xv[r], nu1[r], nu2[r]};
            rhs[r] = w[r];
        }
        return solve_small<Jet3>(4, m, rhs);
    };
    const auto duu = decompose(xuu);
    const auto duv = decompose(xuv);
    const auto dvv = decompose(xvv);

    auto frame_h = [&](int slot) {
        auto comb = [&](const TangentField& y, const TangentField& z) {
            return y.a * z.a * duu[slot] + (y.a * z.b + y.b * z.a) * duv[slot] + y.b * z.b * dvv[slot];
        };
        return std::array<Jet3, 3>{comb(X1, X1), comb(X1, X2), comb(X2, X2)};
    };
    const auto h1 = frame_h(2);  // (a, b, c) w.r.t. nu-basis
    const auto h2 = frame_h(3);  // (e, f, g)

    const auto xi_coords = decompose(xi);
    const Jet3 lam3 = xi_coords[2], lam4 = xi_coords[3];

    const Jet3 K = det4(X1.vec, X2.vec, nu1, nu2);

    const Jet3 denom = h1[0] * lam4 - h2[0] * lam3;
    const double scale =
        std::abs(h1[0].value() * lam4.value()) + std::abs(h2[0].value() * lam3.value()) + 1e-300;
    if (!(std::abs(denom.value()) > 1e-12 * scale))
        throw DegenerateData("a*lambda4 - e*lambda3 vanished in the frame construction");

    const Jet3 beta = lam4 / denom;
    const Jet3 psi = -lam3 / denom;
    const Jet3 alpha = K * h2[0];
    const Jet3 phi = -(K * h1[0]);

    const Jet3 det = alpha * psi - beta * phi;
    JetVec4 xi1, xi2;
    for (int k = 0; k < 4; ++k) {
        xi1[k] = (psi * nu1[k] - beta * nu2[k]) / det;
        xi2[k] = (alpha * nu2[k] - phi * nu1[k]) / det;
    }
    return {xi1, xi2};
}

FramePoint build_frame_point(const SurfaceJet& jet, const MetricField& field,
                             const std::optional<std::pair<JetVec4, JetVec4>>& sigma0) {
    FramePoint fp;
    fp.jet = jet;
    fp.field = field;

    const auto Gj = metric_G_jets(jet, field.xi);
    fp.G = {Gj[0].value(), Gj[1].value(), Gj[2].value()};
    fp.g = normalize_metric(fp.G);
    fp.detG = fp.G.det();

    auto [X1, X2] = orthonormal_frame(jet, field);
    fp.X1 = X1;
    fp.X2 = X2;

    if (sigma0) {
        fp.nu1 = sigma0->first;
        fp.nu2 = sigma0->second;
    } else {
        ComplementChoice choice;
        std::tie(fp.nu1, fp.nu2) = euclidean_complement(jet, choice);
    }
    std::tie(fp.xi1, fp.xi2) = distinguished_frame(jet, fp.X1, fp.X2, field.xi, fp.nu1, fp.nu2);
    return fp;
}

double FrameResiduals::max() const {
    return std::max({det_one, h1_11, h2_delta, xi_class, orthonormal});
}

FrameResiduals frame_residuals(const FramePoint& fp) {
    FrameResiduals r;
    r.det_one = std::abs(det4(value_of(fp.X1.vec), value_of(fp.X2.vec), value_of(fp.xi1), value_of(fp.xi2)) - 1.0);

    const Vec4 c1 = value_of(fp.X1.vec), c2 = value_of(fp.X2.vec);
    const Vec4 c3 = value_of(fp.xi1), c4 = value_of(fp.xi2);
    auto decompose = [&](const Vec4& w) {
        std::array<std::array<double, 4>, 4> m;
        for (int i = 0; i < 4; ++i) m[i] = {c1[i], c2[i], c3[i], c4[i]};
        return solve_small<double>(4, m, {w[0], w[1], w[2], w[3]});
    };

    auto second = [&](const TangentField& y, const TangentField& z) {
        return value_of(dir_derivative(z.vec, y));
    };
    const auto d11 = decompose(second(fp.X1, fp.X1));
    const auto d12 = decompose(second(fp.X1, fp.X2));
    const auto d22 = decompose(second(fp.X2, fp.X2));
    r.h1_11 = std::abs(d11[2]);
    r.h2_delta = std::max({std::abs(d11[3] - 1.0), std::abs(d12[3]), std::abs(d22[3] - 1.0)});

    const Vec4 xi = value_of(fp.field.xi);
    Vec4 diff;
    for (int i = 0; i < 4; ++i) diff[i] = -c3[i] - xi[i];
    const auto dcls = decompose(diff);
    r.xi_class = (std::abs(dcls[2]) + std::abs(dcls[3])) / (1.0 + norm(xi));

    auto gval = [&](const TangentField& y, const TangentField& z) {
        const double ya = y.a.value(), yb = y.b.value(), za = z.a.value(), zb = z.b.value();
        return fp.g.apply(ya, yb, za, zb);
    };
    r.orthonormal = std::max({std::abs(gval(fp.X1, fp.X1) - 1.0), std::abs(gval(fp.X1, fp.X2)),
                              std::abs(gval(fp.X2, fp.X2) - 1.0)});
    return r;
}

TransversalMetric gperp(double b, double c) {
    return {Mat2Sym{1.0, -0.5 * c, 4.0 * b * b + 1.25 * c * c}};
}

}  // namespace affine4
