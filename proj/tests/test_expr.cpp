#include <doctest.h>

#include "affine4/expr.hpp"
#include "affine4/surface.hpp"
#include "testing.hpp"

using namespace affine4;
using namespace affine4::testing;

namespace {
ExprPtr parse_uv(const std::string& s) { return parse_expr(s, kSurfaceVars); }
}  // namespace

TEST_CASE("the fixture surface parses") {
    const std::array<std::string, 4> comps = {"u", "v", "u*v", "(u^2+v^2+u^2*v^2)/2"};
    const ImmersionSpec spec = parse_immersion(comps);
    const std::array<double, 2> at{1.0, 2.0};
    CHECK(eval_expr<double>(spec.components[2], std::span<const double>(at)) == 2.0);
    CHECK(eval_expr<double>(spec.components[3], std::span<const double>(at)) == doctest::Approx(4.5));
}

TEST_CASE("parse error carries the byte offset") {
    try {
        (void)parse_uv("u+*v");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 2);
    }
}

TEST_CASE("unknown identifiers are rejected") {
    CHECK_THROWS_AS((void)parse_uv("w+v"), UnknownIdentifier);
    try {
        (void)parse_uv("tan(u)");
        FAIL("expected UnknownIdentifier");
    } catch (const UnknownIdentifier& e) {
        CHECK(e.name == "tan");
    }
}

TEST_CASE("parse-print-parse is the identity on syntax trees") {
    const char* cases[] = {
        "u",
        "-u",
        "u+v*u",
        "(u^2+v^2+u^2*v^2)/2",
        "sin(u)*cos(v)-exp(u/4)",
        "sqrt(1+u^2)-log(2+v^2)",
        "u^-2 + 3.5e-2*v",
        "-(u - -v)",
        "1/(u*v*(v^2+u^3))",
    };
    for (const char* text : cases) {
        CAPTURE(text);
        const ExprPtr once = parse_uv(text);
        const std::string printed = print_expr(once, kSurfaceVars);
        CAPTURE(printed);
        const ExprPtr twice = parse_uv(printed);
        CHECK(expr_equal(once, twice));
    }
}

TEST_CASE("numbers support decimals and exponents") {
    const std::array<double, 2> at{0.0, 0.0};
    CHECK(eval_expr<double>(parse_uv("2.5e2"), std::span<const double>(at)) == 250.0);
    CHECK(eval_expr<double>(parse_uv(".5"), std::span<const double>(at)) == 0.5);
    CHECK(eval_expr<double>(parse_uv("1e-3"), std::span<const double>(at)) == 1e-3);
}

TEST_CASE("symbolic derivative matches the jet evaluation") {
    Rng rng(11);
    const char* cases[] = {
        "u^3*v - 2*u*v^2",
        "sin(u*v)+cos(u)",
        "sqrt(1+u^2+v^2)",
        "exp(u/3)*log(2+v^2)",
        "(u+v)/(2+u^2)",
        "u^-1 + v^2",
    };
    for (const char* text : cases) {
        const ExprPtr e = parse_uv(text);
        const ExprPtr eu = differentiate(e, 0);
        const ExprPtr ev = differentiate(e, 1);
        for (int t = 0; t < 10; ++t) {
            const double u = rng.uniform(0.2, 1.0), v = rng.uniform(0.2, 1.0);
            const std::array<Jet3, 2> at{Jet3::variable_u(u), Jet3::variable_v(v)};
            const Jet3 j = eval_expr<Jet3>(e, std::span<const Jet3>(at));
            const std::array<double, 2> pt{u, v};
            CHECK(rel_err(eval_expr<double>(eu, std::span<const double>(pt)), j.du()) < 1e-12);
            CHECK(rel_err(eval_expr<double>(ev, std::span<const double>(pt)), j.dv()) < 1e-12);
        }
    }
}

TEST_CASE("evaluation faults throw DomainError") {
    const std::array<double, 2> at{-1.0, 0.0};
    CHECK_THROWS_AS((void)eval_expr<double>(parse_uv("log(u)"), std::span<const double>(at)), DomainError);
    CHECK_THROWS_AS((void)eval_expr<double>(parse_uv("sqrt(u)"), std::span<const double>(at)), DomainError);
    CHECK_THROWS_AS((void)eval_expr<double>(parse_uv("1/v"), std::span<const double>(at)), DomainError);
}
