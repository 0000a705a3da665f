// affine4 command line: per-point analysis grids, asymptotic-line
// extraction and the verification suite.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "affine4/report.hpp"
#include "affine4/verify.hpp"

namespace {

using namespace affine4;

struct SurfaceFlags {
    std::string surface;  // catalog:<name>
    std::string g;
    std::string x, y, z, w;
    std::string xi;
    std::string alpha, beta;
    std::string domain;
    std::string grid = "11x11";
};

void add_surface_flags(CLI::App* cmd, SurfaceFlags& f) {
    cmd->add_option("--surface", f.surface, "catalog:<name> (paraboloid-graph, hyperboloid-graph, "
                                            "ellipsoid-graph, q13-graph, product-parabolas, "
                                            "product-of-curves, nv-fixture)");
    cmd->add_option("--g", f.g, "graph function g(u,v) for the *-graph catalog entries (default u*v)");
    cmd->add_option("--x", f.x, "first component expression in u, v");
    cmd->add_option("--y", f.y, "second component expression");
    cmd->add_option("--z", f.z, "third component expression");
    cmd->add_option("--w", f.w, "fourth component expression");
    cmd->add_option("--xi", f.xi, "explicit metric field: four expressions separated by ';'");
    cmd->add_option("--alpha", f.alpha, "product-of-curves alpha(u): two expressions separated by ';'");
    cmd->add_option("--beta", f.beta, "product-of-curves beta(v): two expressions separated by ';'");
    cmd->add_option("--domain", f.domain, "parameter rectangle u0:u1,v0:v1 (default: catalog domain)");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t at = text.find(sep, start);
        if (at == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, at - start));
        start = at + 1;
    }
}

ImmersionSpec build_surface(const SurfaceFlags& f) {
    ImmersionSpec spec;
    if (!f.surface.empty()) {
        const std::string prefix = "catalog:";
        if (f.surface.rfind(prefix, 0) != 0) throw Error("--surface expects catalog:<name>");
        CatalogArgs args;
        args.g = f.g;
        if (!f.alpha.empty()) {
            const auto parts = split(f.alpha, ';');
            if (parts.size() != 2) throw Error("--alpha expects two expressions separated by ';'");
            args.alpha = {parts[0], parts[1]};
        }
        if (!f.beta.empty()) {
            const auto parts = split(f.beta, ';');
            if (parts.size() != 2) throw Error("--beta expects two expressions separated by ';'");
            args.beta = {parts[0], parts[1]};
        }
        spec = catalog(f.surface.substr(prefix.size()), args);
    } else {
        if (f.x.empty() || f.y.empty() || f.z.empty() || f.w.empty())
            throw Error("either --surface or all of --x --y --z --w are required");
        spec = parse_immersion({f.x, f.y, f.z, f.w});
    }
    if (!f.xi.empty()) {
        const auto parts = split(f.xi, ';');
        if (parts.size() != 4) throw Error("--xi expects four expressions separated by ';'");
        std::array<ExprPtr, 4> xi;
        for (int k = 0; k < 4; ++k) xi[static_cast<std::size_t>(k)] = parse_expr(parts[static_cast<std::size_t>(k)], kSurfaceVars);
        spec.xi = xi;
    }
    if (!f.domain.empty()) {
        const auto uv = split(f.domain, ',');
        if (uv.size() != 2) throw Error("--domain expects u0:u1,v0:v1");
        const auto ur = split(uv[0], ':');
        const auto vr = split(uv[1], ':');
        if (ur.size() != 2 || vr.size() != 2) throw Error("--domain expects u0:u1,v0:v1");
        spec.domain = {std::stod(ur[0]), std::stod(ur[1]), std::stod(vr[0]), std::stod(vr[1])};
        if (!(spec.domain.u0 < spec.domain.u1) || !(spec.domain.v0 < spec.domain.v1))
            throw Error("--domain rectangle is degenerate");
    }
    return spec;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << content;
}

int cmd_analyze(const SurfaceFlags& flags, const std::string& grid, const std::string& out_path) {
    const ImmersionSpec spec = build_surface(flags);
    const auto dims = split(grid, 'x');
    if (dims.size() != 2) throw Error("--grid expects NuxNv, e.g. 11x11");
    const int nu = std::stoi(dims[0]);
    const int nv = std::stoi(dims[1]);
    if (nu < 1 || nv < 1) throw Error("--grid dimensions must be positive");

    const GridReport report = grid_report(spec, spec.domain, nu, nv);
    const std::string json = to_json(report);
    if (out_path.empty()) {
        std::fputs(json.c_str(), stdout);
    } else {
        write_file(out_path, json);
        int ok = 0;
        for (const auto& r : report.records) ok += (r.status == "ok");
        std::printf("wrote %s: %zu records (%d ok)\n", out_path.c_str(), report.records.size(), ok);
    }
    return 0;
}

int cmd_lines(const SurfaceFlags& flags, const std::string& seed, int branch, double step, double len,
              const std::string& out_path) {
    const ImmersionSpec spec = build_surface(flags);
    const auto parts = split(seed, ',');
    if (parts.size() != 2) throw Error("--seed expects u,v");
    const double u = std::stod(parts[0]);
    const double v = std::stod(parts[1]);
    const Polyline line = integrate_asymptotic_line(spec, u, v, branch, step, len);
    const std::string csv = to_csv(line);
    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_file(out_path, csv);
        std::printf("wrote %s: %zu samples, termination: %s\n", out_path.c_str(), line.points.size(),
                    line.termination.c_str());
    }
    return 0;
}

int cmd_verify(const std::string& suite, std::optional<double> tol) {
    const auto ids = suite_criteria(suite);
    const auto results = run_criteria(ids, tol);
    bool all_pass = true;
    for (const CriterionResult& r : results) {
        const SubCheck& b = r.binding();
        std::printf("%-4s %2d  %-58s measured=%-12.5g tol=%-9.3g (%s)\n", r.pass() ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), b.measured, b.tolerance, b.name.c_str());
        all_pass = all_pass && r.pass();
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"affine-invariant structures of surfaces in affine 4-space"};
    app.require_subcommand(1);

    SurfaceFlags aflags;
    std::string agrid = "11x11", aout;
    CLI::App* analyze = app.add_subcommand("analyze", "per-point reports over a parameter grid (JSON)");
    add_surface_flags(analyze, aflags);
    analyze->add_option("--grid", agrid, "grid size NuxNv (default 11x11)");
    analyze->add_option("--out", aout, "output file (stdout when omitted)");

    SurfaceFlags lflags;
    std::string lseed = "0,0", lout;
    int lbranch = 0;
    double lstep = 0.01, llen = 1.0;
    CLI::App* lines = app.add_subcommand("lines", "integrate an asymptotic line (CSV)");
    add_surface_flags(lines, lflags);
    lines->add_option("--seed", lseed, "seed point u,v");
    lines->add_option("--branch", lbranch, "root branch, 0 or 1 (ordered by s/r descending)")
        ->check(CLI::Range(0, 1));
    lines->add_option("--step", lstep, "RK4 step in parameter space (default 0.01)");
    lines->add_option("--len", llen, "parameter arclength to integrate (default 1.0)");
    lines->add_option("--out", lout, "output file (stdout when omitted)");

    std::string vsuite = "all";
    double vtol = -1;
    CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--suite", vsuite,
                       "metrics | frames | equiaffine | asymptotics | hyperquadrics | fixtures | all");
    verify->add_option("--tol", vtol, "override the tolerance of every upper-bound check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(aflags, agrid, aout);
        if (lines->parsed()) return cmd_lines(lflags, lseed, lbranch, lstep, llen, lout);
        std::optional<double> tol;
        if (vtol > 0) tol = vtol;
        return cmd_verify(vsuite, tol);
    } catch (const ParseError& e) {
        std::fputs(error_json("parse-error", e.what()).c_str(), stdout);
        return 2;
    } catch (const UnknownIdentifier& e) {
        std::fputs(error_json("unknown-identifier", e.what()).c_str(), stdout);
        return 2;
    } catch (const UnknownSurface& e) {
        std::fputs(error_json("unknown-surface", e.what()).c_str(), stdout);
        return 2;
    } catch (const UnknownQuadric& e) {
        std::fputs(error_json("unknown-quadric", e.what()).c_str(), stdout);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fputs(error_json("usage", e.what()).c_str(), stdout);
        return 2;
    } catch (const std::out_of_range& e) {
        std::fputs(error_json("usage", e.what()).c_str(), stdout);
        return 2;
    } catch (const Error& e) {
        // unknown suite names and malformed flag payloads are usage errors
        const std::string what = e.what();
        if (what.find("unknown verification suite") != std::string::npos ||
            what.find("expects") != std::string::npos || what.find("required") != std::string::npos ||
            what.find("degenerate") != std::string::npos) {
            std::fputs(error_json("usage", what).c_str(), stdout);
            return 2;
        }
        std::fputs(error_json("geometry", what).c_str(), stdout);
        return 3;
    }
}
