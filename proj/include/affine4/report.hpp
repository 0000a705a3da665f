#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affine4/analysis.hpp"

namespace affine4 {

/// Everything computed at one grid point, ready for serialization. Points
/// where the pipeline cannot run carry only (u, v, status).
struct PointReport {
    double u = 0, v = 0;
    std::string status;  // ok | inflection | not-locally-convex | not-immersed | domain-error | degenerate
    std::string metric_source;

    Vec4 X{};
    Mat2Sym g{};
    Vec4 X1{}, X2{}, xi1{}, xi2{};
    double b = 0, c = 0;
    std::array<double, 8> a{};
    Vec4 anti1{}, anti2{}, sym1{}, sym2{};
    double plane_angle = 0;
    bool inflection = false;
    AsymptoticData asymptotics;
    bool semiumbilic = false;
    double semiumbilic_minor = 0;
    std::vector<HomPair> semiumbilic_directions;

    double res_frame = 0;
    double res_equiaffine_anti = 0;
    double res_equiaffine_sym = 0;
    double res_torsion = 0;
    double res_curvature_expansion = 0;
    double res_binormal = 0;
};

/// Full per-point pipeline, error-mapped to a report status.
PointReport point_report(const ImmersionSpec& spec, double u, double v);

struct GridReport {
    std::string surface;
    DomainRect domain;
    int nu = 0, nv = 0;
    std::vector<PointReport> records;
};

/// Grid evaluation with a worker pool (EQUIAFFINE_THREADS overrides the
/// default of one worker per logical core); records are in row-major grid
/// order regardless of scheduling.
GridReport grid_report(const ImmersionSpec& spec, const DomainRect& domain, int nu, int nv);

/// JSON with every number printed as %.17g; byte-identical across runs.
std::string to_json(const GridReport& report);

std::string error_json(const std::string& kind, const std::string& message);

/// CSV polyline (header u,v,x1,x2,x3,x4,branch), %.17g numbers.
std::string to_csv(const Polyline& line);

}  // namespace affine4
