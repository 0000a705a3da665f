#pragma once

#include <array>
#include <optional>
#include <string>

#include "affine4/expr.hpp"
#include "affine4/linalg.hpp"

namespace affine4 {

/// Which locally strictly convex hypersurface (if any) a catalog surface
/// lives on; drives the Blaschke-restriction metric field.
enum class QuadricKind { Paraboloid, Ellipsoid, Hyperboloid, Q13 };

struct DomainRect {
    double u0 = -1, u1 = 1, v0 = -1, v1 = 1;
    bool contains(double u, double v) const { return u >= u0 && u <= u1 && v >= v0 && v <= v1; }
};

/// A parametrized immersion X(u, v) in affine 4-space, with an optional
/// explicit metric field xi(u, v) and an optional containing quadric.
struct ImmersionSpec {
    std::array<ExprPtr, 4> components;
    std::optional<std::array<ExprPtr, 4>> xi;
    std::optional<QuadricKind> quadric;
    DomainRect domain;
    std::string name;
};

/// Full 3-jet of the immersion at a parameter point. Components are kept
/// as jets so downstream frames can be differentiated; the named partials
/// are plain Vec4 views of the coefficients.
struct SurfaceJet {
    JetVec4 jets;
    double u = 0, v = 0;

    Vec4 X() const { return value_of(jets); }
    Vec4 Xu() const { return part(1, 0); }
    Vec4 Xv() const { return part(0, 1); }
    Vec4 Xuu() const { return part(2, 0); }
    Vec4 Xuv() const { return part(1, 1); }
    Vec4 Xvv() const { return part(0, 2); }
    Vec4 Xuuu() const { return part(3, 0); }
    Vec4 Xuuv() const { return part(2, 1); }
    Vec4 Xuvv() const { return part(1, 2); }
    Vec4 Xvvv() const { return part(0, 3); }

    JetVec4 field_du() const { return {jets[0].d_du(), jets[1].d_du(), jets[2].d_du(), jets[3].d_du()}; }
    JetVec4 field_dv() const { return {jets[0].d_dv(), jets[1].d_dv(), jets[2].d_dv(), jets[3].d_dv()}; }

  private:
    Vec4 part(int i, int j) const {
        return {jets[0].at(i, j), jets[1].at(i, j), jets[2].at(i, j), jets[3].at(i, j)};
    }
};

inline const std::array<std::string, 2> kSurfaceVars = {"u", "v"};

/// Parse four component expressions in u, v.
ImmersionSpec parse_immersion(const std::array<std::string, 4>& texts);

/// Evaluate the full 3-jet at (u, v). Throws NotImmersed when
/// rank(X_u, X_v) < 2, DomainError on evaluation faults.
SurfaceJet eval_jet3(const ImmersionSpec& spec, double u, double v);

struct CatalogArgs {
    std::string g;                    // graph function g(u,v) for the *-graph entries
    std::array<std::string, 2> alpha{"u", "u^2/2"};  // product-of-curves alpha(u)
    std::array<std::string, 2> beta{"v", "v^2/2"};   // product-of-curves beta(v)
};

/// Built-in surfaces:
///   paraboloid-graph(g)   X = (u, v, g, (u^2+v^2+g^2)/2), attached xi
///   hyperboloid-graph(g)  X = (u, v, g, sqrt(1+u^2+v^2+g^2)), attached xi
///   q13-graph(g)          X = (u, v, g, 1/(u v g)), attached xi
///   ellipsoid-graph(g)    X = (u, v, g, sqrt(1-u^2-v^2-g^2)), Blaschke xi
///   product-of-curves     X = (a1(u), a2(u), b1(v), b2(v)), xi = (0, 1/a1', 0, -1/b1')
///   product-parabolas     product-of-curves with the default parabolas
///   nv-fixture            (u, v, u v, (u^2+v^2+u^2 v^2)/2), the Nomizu-Vrancken comparison surface
ImmersionSpec catalog(const std::string& name, const CatalogArgs& args = {});

/// Apply a linear map (columns t0..t3) to every component expression; the
/// optional xi transforms the same way. Used by the equivariance tests.
ImmersionSpec transform_immersion(const ImmersionSpec& spec, const std::array<Vec4, 4>& columns);

}  // namespace affine4
