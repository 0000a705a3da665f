#include "affine4/report.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace affine4 {

PointReport point_report(const ImmersionSpec& spec, double u, double v) {
    PointReport r;
    r.u = u;
    r.v = v;

    PipelineChoices choices;
    PointAnalysis pa;
    try {
        pa = analyze_point(spec, u, v, choices);
    } catch (const NotImmersed&) {
        r.status = "not-immersed";
        return r;
    } catch (const NotLocallyConvex&) {
        r.status = "not-locally-convex";
        return r;
    } catch (const NotPositiveDefinite&) {
        r.status = "not-locally-convex";
        return r;
    } catch (const DegenerateData&) {
        r.status = "degenerate";
        return r;
    } catch (const DomainError&) {
        r.status = "domain-error";
        return r;
    } catch (const SingularSystem&) {
        r.status = "degenerate";
        return r;
    } catch (const NotOnHypersurface&) {
        r.status = "domain-error";
        return r;
    } catch (const Error&) {
        r.status = "degenerate";
        return r;
    }

    switch (pa.fp.field.source) {
        case MetricField::Source::User: r.metric_source = "user"; break;
        case MetricField::Source::Auto: r.metric_source = "auto"; break;
        case MetricField::Source::Blaschke: r.metric_source = "blaschke"; break;
    }
    r.X = pa.jet.X();
    r.b = pa.cd.b;
    r.c = pa.cd.c;
    r.inflection = pa.inflection;
    if (pa.inflection) {
        r.status = "inflection";
        return r;
    }
    r.status = "ok";
    r.g = normalize_metric(pa.fp.G);
    r.X1 = value_of(pa.fp.X1.vec);
    r.X2 = value_of(pa.fp.X2.vec);
    r.xi1 = value_of(pa.fp.xi1);
    r.xi2 = value_of(pa.fp.xi2);
    r.a = pa.cd.a;
    r.anti1 = pa.anti.b1;
    r.anti2 = pa.anti.b2;
    r.sym1 = pa.sym.b1;
    r.sym2 = pa.sym.b2;
    r.plane_angle = plane_compare(pa.anti, pa.sym);
    r.asymptotics = binormals(Mat2Sym{0, pa.cd.b, pa.cd.c}, Mat2Sym{1, 0, 1});

    r.res_frame = frame_residuals(pa.fp).max();
    auto corrected_residual = [&](const CorrectionCoeffs& z, bool antisym) {
        ConnectionData cd2 = pa.cd;
        cd2.a = transform_connection(pa.cd, z);
        const NablaGQuantities q = nabla_g_quantities(cd2);
        const double extra = antisym ? std::max(std::abs(q.C1), std::abs(q.C2))
                                     : std::max(std::abs(q.D1), std::abs(q.D2));
        return std::max({std::abs(q.B1), std::abs(q.B2), extra});
    };
    r.res_equiaffine_anti = corrected_residual(pa.anti_z, true);
    r.res_equiaffine_sym = corrected_residual(pa.sym_z, false);

    {
        const double t1 = pa.cd.a[2] - pa.cd.a[4];
        const double t2 = pa.cd.a[3] - pa.cd.a[5];
        const Vec4 lhs = t1 * value_of(pa.fp.X1.vec) + t2 * value_of(pa.fp.X2.vec);
        const auto br = lie_bracket_coords(pa.fp);
        const Vec4 rhs = br[0] * pa.jet.Xu() + br[1] * pa.jet.Xv();
        double worst = 0;
        for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
        r.res_torsion = worst;
    }
    for (const auto& e : r.asymptotics.entries) {
        const Mat2Sym m = height_hessian(e.binormal.r, e.binormal.s, Mat2Sym{0, pa.cd.b, pa.cd.c},
                                         Mat2Sym{1, 0, 1});
        r.res_binormal = std::max(r.res_binormal, std::abs(m.det()));
    }

    try {
        const CorrectedBundleData cbd = corrected_bundle_data(spec, u, v, true);
        const SemiumbilicResult semi = semiumbilic_test(cbd.sd);
        r.semiumbilic = semi.semiumbilic;
        r.semiumbilic_minor = semi.minor_norm;
        r.semiumbilic_directions = semi.directions;
        const NormalCurvature disp = normal_curvature(cbd.sd, cbd.b, cbd.c);
        const NormalCurvature direct = normal_curvature_direct(cbd.sd, cbd.b, cbd.c, {1, 0}, {0, 1});
        r.res_curvature_expansion =
            std::max({std::abs(disp.r_xi1[0] - direct.r_xi1[0]), std::abs(disp.r_xi1[1] - direct.r_xi1[1]),
                      std::abs(disp.r_xi2[0] - direct.r_xi2[0]), std::abs(disp.r_xi2[1] - direct.r_xi2[1])});
    } catch (const Error&) {
        // stencil hit a boundary or a degenerate point: report without the
        // corrected-bundle extras
        r.semiumbilic = false;
        r.semiumbilic_minor = -1;
    }
    return r;
}

GridReport grid_report(const ImmersionSpec& spec, const DomainRect& domain, int nu, int nv) {
    GridReport g;
    g.surface = spec.name;
    g.domain = domain;
    g.nu = nu;
    g.nv = nv;
    g.records.resize(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));

    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("EQUIAFFINE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) workers = n;
    }
    if (workers < 1) workers = 1;

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= g.records.size()) return;
            const int i = static_cast<int>(k) / nv;
            const int j = static_cast<int>(k) % nv;
            const double u = (nu == 1) ? domain.u0 : domain.u0 + (domain.u1 - domain.u0) * i / (nu - 1);
            const double v = (nv == 1) ? domain.v0 : domain.v0 + (domain.v1 - domain.v0) * j / (nv - 1);
            g.records[k] = point_report(spec, u, v);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return g;
}

namespace {

class Json {
  public:
    std::string out;

    void raw(const char* s) { out += s; }
    void key(const char* k) {
        comma();
        out += '"';
        out += k;
        out += "\":";
        fresh_ = true;
    }
    void begin_obj() {
        comma();
        out += '{';
        fresh_ = true;
    }
    void end_obj() {
        out += '}';
        fresh_ = false;
    }
    void begin_arr() {
        comma();
        out += '[';
        fresh_ = true;
    }
    void end_arr() {
        out += ']';
        fresh_ = false;
    }
    void number(double x) {
        comma();
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out += buf;
        fresh_ = false;
    }
    void integer(long long x) {
        comma();
        out += std::to_string(x);
        fresh_ = false;
    }
    void boolean(bool b) {
        comma();
        out += b ? "true" : "false";
        fresh_ = false;
    }
    void text(const std::string& s) {
        comma();
        out += '"';
        for (char ch : s) {
            if (ch == '"' || ch == '\\') out += '\\';
            out += ch;
        }
        out += '"';
        fresh_ = false;
    }

  private:
    bool fresh_ = true;
    void comma() {
        if (!fresh_) out += ',';
        fresh_ = true;
    }
};

void write_vec4(Json& j, const Vec4& v) {
    j.begin_arr();
    for (int i = 0; i < 4; ++i) j.number(v[i]);
    j.end_arr();
}

}  // namespace

std::string to_json(const GridReport& report) {
    Json j;
    j.begin_obj();
    j.key("schema_version");
    j.text("1");
    j.key("surface");
    j.text(report.surface);
    j.key("domain");
    j.begin_arr();
    j.begin_arr();
    j.number(report.domain.u0);
    j.number(report.domain.u1);
    j.end_arr();
    j.begin_arr();
    j.number(report.domain.v0);
    j.number(report.domain.v1);
    j.end_arr();
    j.end_arr();
    j.key("grid");
    j.begin_arr();
    j.integer(report.nu);
    j.integer(report.nv);
    j.end_arr();
    j.key("records");
    j.begin_arr();
    for (const PointReport& r : report.records) {
        j.begin_obj();
        j.key("u");
        j.number(r.u);
        j.key("v");
        j.number(r.v);
        j.key("status");
        j.text(r.status);
        if (r.status == "ok") {
            j.key("metric_source");
            j.text(r.metric_source);
            j.key("X");
            write_vec4(j, r.X);
            j.key("g");
            j.begin_arr();
            j.begin_arr();
            j.number(r.g.xx);
            j.number(r.g.xy);
            j.end_arr();
            j.begin_arr();
            j.number(r.g.xy);
            j.number(r.g.yy);
            j.end_arr();
            j.end_arr();
            j.key("frame");
            j.begin_obj();
            j.key("X1");
            write_vec4(j, r.X1);
            j.key("X2");
            write_vec4(j, r.X2);
            j.key("xi1");
            write_vec4(j, r.xi1);
            j.key("xi2");
            write_vec4(j, r.xi2);
            j.end_obj();
            j.key("b");
            j.number(r.b);
            j.key("c");
            j.number(r.c);
            j.key("a");
            j.begin_arr();
            for (double ai : r.a) j.number(ai);
            j.end_arr();
            j.key("antisym_plane");
            j.begin_arr();
            write_vec4(j, r.anti1);
            write_vec4(j, r.anti2);
            j.end_arr();
            j.key("sym_plane");
            j.begin_arr();
            write_vec4(j, r.sym1);
            write_vec4(j, r.sym2);
            j.end_arr();
            j.key("plane_angle");
            j.number(r.plane_angle);
            j.key("inflection");
            j.boolean(r.inflection);
            j.key("binormals");
            j.begin_arr();
            for (const auto& e : r.asymptotics.entries) {
                j.begin_obj();
                j.key("r");
                j.number(e.binormal.r);
                j.key("s");
                j.number(e.binormal.s);
                j.key("direction");
                j.begin_arr();
                j.number(e.direction[0]);
                j.number(e.direction[1]);
                j.end_arr();
                j.key("any_direction");
                j.boolean(e.any_direction);
                j.end_obj();
            }
            j.end_arr();
            j.key("all_directions");
            j.boolean(r.asymptotics.all_directions);
            j.key("semiumbilic");
            j.begin_obj();
            j.key("flag");
            j.boolean(r.semiumbilic);
            j.key("minor_norm");
            j.number(r.semiumbilic_minor);
            j.key("directions");
            j.begin_arr();
            for (const auto& d : r.semiumbilic_directions) {
                j.begin_arr();
                j.number(d.r);
                j.number(d.s);
                j.end_arr();
            }
            j.end_arr();
            j.end_obj();
            j.key("residuals");
            j.begin_obj();
            j.key("frame_conditions");
            j.number(r.res_frame);
            j.key("equiaffine_antisym");
            j.number(r.res_equiaffine_anti);
            j.key("equiaffine_sym");
            j.number(r.res_equiaffine_sym);
            j.key("torsion");
            j.number(r.res_torsion);
            j.key("normal_curvature_expansion");
            j.number(r.res_curvature_expansion);
            j.key("binormal");
            j.number(r.res_binormal);
            j.end_obj();
        }
        j.end_obj();
    }
    j.end_arr();
    j.end_obj();
    j.raw("\n");
    return std::move(j.out);
}

std::string error_json(const std::string& kind, const std::string& message) {
    Json j;
    j.begin_obj();
    j.key("error");
    j.text(kind);
    j.key("message");
    j.text(message);
    j.end_obj();
    j.raw("\n");
    return std::move(j.out);
}

std::string to_csv(const Polyline& line) {
    std::string out = "u,v,x1,x2,x3,x4,branch\n";
    char buf[40];
    for (const auto& p : line.points) {
        auto add = [&](double x, char sep) {
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out += buf;
            out += sep;
        };
        add(p.u, ',');
        add(p.v, ',');
        for (int i = 0; i < 4; ++i) add(p.x[i], ',');
        out += std::to_string(line.branch);
        out += '\n';
    }
    return out;
}

}  // namespace affine4
