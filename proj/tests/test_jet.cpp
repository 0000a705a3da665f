#include <doctest.h>

#include "affine4/jet.hpp"
#include "testing.hpp"

using namespace affine4;
using namespace affine4::testing;

TEST_CASE("jet product follows the Leibniz rule: u*v at (2,3)") {
    const Jet3 p = Jet3::variable_u(2.0) * Jet3::variable_v(3.0);
    CHECK(p.value() == 6.0);
    CHECK(p.du() == 3.0);
    CHECK(p.dv() == 2.0);
    CHECK(p.duv() == 1.0);
    CHECK(p.duu() == 0.0);
    CHECK(p.dvv() == 0.0);
    CHECK(p.duuu() == 0.0);
    CHECK(p.duuv() == 0.0);
    CHECK(p.duvv() == 0.0);
    CHECK(p.dvvv() == 0.0);
}

TEST_CASE("sqrt of a constant jet") {
    const Jet3 r = sqrt(Jet3::constant(4.0));
    CHECK(r.value() == 2.0);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j)
            if (i + j > 0) CHECK(r.at(i, j) == 0.0);
}

TEST_CASE("sin of the coordinate jet at 0") {
    const Jet3 s = sin(Jet3::variable_u(0.0));
    CHECK(s.value() == 0.0);
    CHECK(s.du() == 1.0);
    CHECK(s.duu() == 0.0);
    CHECK(s.duuu() == -1.0);
    CHECK(s.dv() == 0.0);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS((void)(Jet3::variable_u(1.0) / Jet3::constant(0.0)), DomainError);
    CHECK_THROWS_AS((void)sqrt(Jet3::constant(-1.0)), DomainError);
    CHECK_THROWS_AS((void)sqrt(Jet3::constant(0.0)), DomainError);
    CHECK_THROWS_AS((void)log(Jet3::constant(0.0)), DomainError);
    CHECK_THROWS_AS((void)pow_int(Jet3::constant(0.0), -2), DomainError);
}

TEST_CASE("pow_int handles negative bases and exponents") {
    Jet3 x = Jet3::variable_u(-2.0);
    const Jet3 cube = pow_int(x, 3);
    CHECK(cube.value() == -8.0);
    CHECK(cube.du() == 12.0);    // 3 x^2
    CHECK(cube.duu() == -12.0);  // 6 x
    CHECK(cube.duuu() == 6.0);

    const Jet3 inv2 = pow_int(x, -2);  // x^-2
    CHECK(inv2.value() == doctest::Approx(0.25));
    CHECK(inv2.du() == doctest::Approx(-2.0 * std::pow(-2.0, -3.0)));
}

namespace {

// random trivariate-ish composite expression built from the jet ops, with a
// matching double version: the finite-difference chain-rule oracle
struct RandomExpr {
    std::vector<int> ops;
    std::vector<double> consts;

    static RandomExpr make(Rng& rng) {
        RandomExpr e;
        const int n = rng.integer(3, 7);
        for (int i = 0; i < n; ++i) {
            e.ops.push_back(rng.integer(0, 8));
            e.consts.push_back(rng.uniform(0.3, 1.7));
        }
        return e;
    }

    template <class T>
    T eval(T u, T v) const {
        using std::cos;
        using std::exp;
        using std::log;
        using std::sin;
        using std::sqrt;
        T acc = u * v + 0.5;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const double c = consts[i];
            switch (ops[i]) {
                case 0: acc = acc + u * c; break;
                case 1: acc = acc - v * c; break;
                case 2: acc = acc * (u + c); break;
                case 3: acc = acc / (2.0 + v * v); break;
                case 4: acc = sin(acc) + c * u; break;
                case 5: acc = cos(acc * 0.5) + v; break;
                case 6: acc = exp(acc * 0.1); break;
                case 7: acc = log(acc * acc + 1.5); break;
                case 8: acc = sqrt(acc * acc + c); break;
            }
        }
        return acc;
    }
};

}  // namespace

TEST_CASE("chain rule: jet partials match finite differences on random composites") {
    Rng rng(20260808);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const RandomExpr e = RandomExpr::make(rng);
        const double u = rng.uniform(-0.8, 0.8), v = rng.uniform(-0.8, 0.8);
        Jet3 j;
        try {
            j = e.eval(Jet3::variable_u(u), Jet3::variable_v(v));
        } catch (const DomainError&) {
            continue;  // random composite wandered out of a domain
        }
        const auto fd = fd_jet([&](double uu, double vv) { return e.eval<double>(uu, vv); }, u, v, 5e-3);
        const int orders[10][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1},
                                   {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}};
        for (int k = 0; k < 10; ++k) {
            const double got = j.at(orders[k][0], orders[k][1]);
            CAPTURE(trial);
            CAPTURE(k);
            CHECK(rel_err(got, fd[static_cast<std::size_t>(k)]) < 1e-6);
        }
        ++checked;
    }
    CHECK(checked >= 40);
}

TEST_CASE("derivative extraction shifts coefficients") {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        Jet3 j;
        for (int i = 0; i <= 3; ++i)
            for (int k = 0; i + k <= 3; ++k) j.at(i, k) = rng.uniform(-2, 2);
        const Jet3 ju = j.d_du();
        CHECK(ju.value() == j.du());
        CHECK(ju.du() == j.duu());
        CHECK(ju.dv() == j.duv());
        CHECK(ju.duu() == j.duuu());
        CHECK(ju.duv() == j.duuv());
        CHECK(ju.dvv() == j.duvv());
        const Jet3 jv = j.d_dv();
        CHECK(jv.value() == j.dv());
        CHECK(jv.duv() == j.duvv());
    }
}
