#include "affine4/surface.hpp"

#include <cmath>

namespace affine4 {

namespace {

ExprPtr parse_uv(const std::string& text) { return parse_expr(text, kSurfaceVars); }

std::array<ExprPtr, 4> parse4(const std::array<std::string, 4>& texts) {
    return {parse_uv(texts[0]), parse_uv(texts[1]), parse_uv(texts[2]), parse_uv(texts[3])};
}

}  // namespace

ImmersionSpec parse_immersion(const std::array<std::string, 4>& texts) {
    ImmersionSpec spec;
    spec.components = parse4(texts);
    spec.name = "user";
    return spec;
}

SurfaceJet eval_jet3(const ImmersionSpec& spec, double u, double v) {
    const std::array<Jet3, 2> vars = {Jet3::variable_u(u), Jet3::variable_v(v)};
    SurfaceJet out;
    out.u = u;
    out.v = v;
    for (int k = 0; k < 4; ++k) out.jets[k] = eval_expr<Jet3>(spec.components[static_cast<std::size_t>(k)], vars);

    // immersion condition via the Gram matrix of (X_u, X_v)
    const Vec4 xu = out.Xu(), xv = out.Xv();
    const Mat2Sym gram{dot(xu, xu), dot(xu, xv), dot(xv, xv)};
    const auto ev = gram.eigenvalues();  // singular values squared
    const double smax = std::sqrt(std::max(ev[1], 0.0));
    const double smin = std::sqrt(std::max(ev[0], 0.0));
    if (!(smin > 1e-10 * smax)) throw NotImmersed("rank(X_u, X_v) < 2 at the evaluated point");
    return out;
}

namespace {

ImmersionSpec graph_surface(const std::string& name, const std::string& g_text, QuadricKind kind) {
    ImmersionSpec spec;
    spec.name = name;
    const ExprPtr u = make_var(0), v = make_var(1);
    const ExprPtr g = parse_uv(g_text.empty() ? "u*v" : g_text);
    const ExprPtr gu = differentiate(g, 0), gv = differentiate(g, 1);
    const ExprPtr half = make_number(0.5);
    const ExprPtr zero = make_number(0.0);

    switch (kind) {
        case QuadricKind::Paraboloid: {
            // X = (u, v, g, (u^2 + v^2 + g^2)/2), xi = -sqrt(1 + gu^2 + gv^2) (0,0,1,g)
            ExprPtr w = make_mul(half, make_add(make_add(make_pow(u, 2), make_pow(v, 2)), make_pow(g, 2)));
            spec.components = {u, v, g, w};
            ExprPtr lam = make_neg(make_call(
                ExprFunc::Sqrt, make_add(make_number(1.0), make_add(make_pow(gu, 2), make_pow(gv, 2)))));
            spec.xi = {{zero, zero, lam, make_mul(lam, g)}};
            spec.domain = {-1, 1, -1, 1};
            break;
        }
        case QuadricKind::Hyperboloid: {
            // X = (u, v, g, sqrt(1 + u^2 + v^2 + g^2))
            ExprPtr r2 = make_add(make_number(1.0),
                                  make_add(make_add(make_pow(u, 2), make_pow(v, 2)), make_pow(g, 2)));
            ExprPtr w = make_call(ExprFunc::Sqrt, r2);
            spec.components = {u, v, g, w};
            // xi = lambda (0, 0, 1, g / sqrt(1+u^2+v^2+g^2)),
            // lambda = -sqrt(1 + gu^2 + gv^2 + (u gu + v gv - g)^2)
            ExprPtr e = make_sub(make_add(make_mul(u, gu), make_mul(v, gv)), g);
            ExprPtr lam = make_neg(make_call(
                ExprFunc::Sqrt,
                make_add(make_number(1.0), make_add(make_add(make_pow(gu, 2), make_pow(gv, 2)), make_pow(e, 2)))));
            spec.xi = {{zero, zero, lam, make_div(make_mul(lam, g), w)}};
            spec.domain = {-1, 1, -1, 1};
            break;
        }
        case QuadricKind::Q13: {
            // X = (u, v, g, 1/(u v g))
            ExprPtr w = make_div(make_number(1.0), make_mul(make_mul(u, v), g));
            spec.components = {u, v, g, w};
            // xi = -(sqrt(2 g^2 + 2 (v gv - u gu)^2 + (g + v gv + u gu)^2) / (2^{4/5} g))
            //      * (0, 0, g, -1/(u v g))
            ExprPtr t1 = make_mul(make_number(2.0), make_pow(g, 2));
            ExprPtr d = make_sub(make_mul(v, gv), make_mul(u, gu));
            ExprPtr t2 = make_mul(make_number(2.0), make_pow(d, 2));
            ExprPtr s = make_add(g, make_add(make_mul(v, gv), make_mul(u, gu)));
            ExprPtr root = make_call(ExprFunc::Sqrt, make_add(t1, make_add(t2, make_pow(s, 2))));
            ExprPtr lam = make_neg(make_div(root, make_mul(make_number(std::pow(2.0, 0.8)), g)));
            spec.xi = {{zero, zero, make_mul(lam, g), make_mul(lam, make_neg(w))}};
            spec.domain = {0.5, 1.5, 0.5, 1.5};
            break;
        }
        case QuadricKind::Ellipsoid: {
            // X = (u, v, g, sqrt(1 - u^2 - v^2 - g^2)); no attached xi, the
            // Blaschke restriction supplies the metric field.
            ExprPtr r2 = make_sub(make_number(1.0),
                                  make_add(make_add(make_pow(u, 2), make_pow(v, 2)), make_pow(g, 2)));
            spec.components = {u, v, g, make_call(ExprFunc::Sqrt, r2)};
            spec.domain = {-0.35, 0.35, -0.35, 0.35};
            break;
        }
    }
    spec.quadric = kind;
    return spec;
}

ImmersionSpec product_of_curves(const CatalogArgs& args) {
    ImmersionSpec spec;
    spec.name = "product-of-curves";
    const ExprPtr a1 = parse_uv(args.alpha[0]), a2 = parse_uv(args.alpha[1]);
    const ExprPtr b1 = parse_uv(args.beta[0]), b2 = parse_uv(args.beta[1]);
    spec.components = {a1, a2, b1, b2};
    // xi = (0, 1/a1'(u), 0, -1/b1'(v))
    const ExprPtr zero = make_number(0.0);
    spec.xi = {{zero, make_div(make_number(1.0), differentiate(a1, 0)), zero,
                make_neg(make_div(make_number(1.0), differentiate(b1, 1)))}};
    spec.domain = {-1, 1, -1, 1};
    return spec;
}

}  // namespace

ImmersionSpec catalog(const std::string& name, const CatalogArgs& args) {
    if (name == "paraboloid-graph") return graph_surface(name, args.g, QuadricKind::Paraboloid);
    if (name == "hyperboloid-graph") return graph_surface(name, args.g, QuadricKind::Hyperboloid);
    if (name == "q13-graph") return graph_surface(name, args.g, QuadricKind::Q13);
    if (name == "ellipsoid-graph") return graph_surface(name, args.g, QuadricKind::Ellipsoid);
    if (name == "product-of-curves") return product_of_curves(args);
    if (name == "product-parabolas") {
        ImmersionSpec spec = product_of_curves(CatalogArgs{});
        spec.name = "product-parabolas";
        return spec;
    }
    if (name == "nv-fixture") {
        ImmersionSpec spec = graph_surface(name, "u*v", QuadricKind::Paraboloid);
        spec.name = "nv-fixture";
        return spec;
    }
    throw UnknownSurface(name);
}

ImmersionSpec transform_immersion(const ImmersionSpec& spec, const std::array<Vec4, 4>& columns) {
    auto apply = [&](const std::array<ExprPtr, 4>& comps) {
        std::array<ExprPtr, 4> out;
        for (int i = 0; i < 4; ++i) {
            ExprPtr acc = make_number(0.0);
            for (int j = 0; j < 4; ++j) {
                acc = make_add(acc, make_mul(make_number(columns[static_cast<std::size_t>(j)][i]),
                                             comps[static_cast<std::size_t>(j)]));
            }
            out[static_cast<std::size_t>(i)] = acc;
        }
        return out;
    };
    ImmersionSpec out = spec;
    out.components = apply(spec.components);
    if (spec.xi) out.xi = apply(*spec.xi);
    out.name = spec.name + "-transformed";
    out.quadric.reset();  // the image quadric is no longer in normal form
    return out;
}

}  // namespace affine4
