#include <doctest.h>

#include <cmath>

#include "affine4/linalg.hpp"
#include "testing.hpp"

using namespace affine4;
using namespace affine4::testing;

TEST_CASE("det4 basics") {
    const Vec4 e0{1, 0, 0, 0}, e1{0, 1, 0, 0}, e2{0, 0, 1, 0}, e3{0, 0, 0, 1};
    CHECK(det4(e0, e1, e2, e3) == 1.0);
    CHECK(det4(e1, e0, e2, e3) == -1.0);
}

TEST_CASE("det4 of the flat-graph paraboloid frame") {
    // rows (1,0,0,u), (0,1,0,v), (0,0,0,1), (0,0,-1,0): hand cofactor
    // expansion along the third row gives -1 * det of the minor with sign
    // (-1)^{3+4}; columns of the matrix are read off the rows below.
    const double u = 0.37, v = -1.21;
    const Vec4 c0{1, 0, 0, 0}, c1{0, 1, 0, 0}, c2{0, 0, 0, -1}, c3{u, v, 1, 0};
    CHECK(det4(c0, c1, c2, c3) == 1.0);
}

TEST_CASE("det4 multilinearity in a scaled column") {
    Rng rng(42);
    for (int t = 0; t < 100; ++t) {
        Vec4 c[4];
        for (auto& v : c)
            for (int i = 0; i < 4; ++i) v[i] = rng.uniform(-2, 2);
        const double s = rng.uniform(-3, 3);
        const int col = rng.integer(0, 3);
        Vec4 scaled[4] = {c[0], c[1], c[2], c[3]};
        for (int i = 0; i < 4; ++i) scaled[col][i] *= s;
        const double lhs = det4(scaled[0], scaled[1], scaled[2], scaled[3]);
        const double rhs = s * det4(c[0], c[1], c[2], c[3]);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("solve_small identity") {
    std::array<std::array<double, 4>, 4> a{};
    for (int i = 0; i < 4; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    const auto x = solve_small<double>(4, a, {3, -1, 2, 0.5});
    CHECK(x[0] == 3.0);
    CHECK(x[1] == -1.0);
    CHECK(x[2] == 2.0);
    CHECK(x[3] == 0.5);
}

TEST_CASE("solve_small on the antisymmetric-correction system") {
    // antisymmetric-correction system with h1(X1,X2) = 1, h1(X2,X2) = 0:
    //   0  = c + b
    //   0  = d + a
    //   C1 = 3a + d
    //   C2 = 3b + c
    const std::array<std::array<double, 4>, 4> m = {{
        {0, 1, 1, 0},
        {1, 0, 0, 1},
        {3, 0, 0, 1},
        {0, 3, 1, 0},
    }};

    SUBCASE("right side (0,0,3,3)") {
        const auto x = solve_small<double>(4, m, {0, 0, 3, 3});
        // back-substitution oracle
        for (int i = 0; i < 4; ++i) {
            double acc = 0;
            for (int j = 0; j < 4; ++j)
                acc += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
            const double want = (i < 2) ? 0.0 : 3.0;
            CHECK(std::abs(acc - want) <= 1e-12 * 3.0);
        }
        CHECK(x[0] == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(x[1] == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(x[2] == doctest::Approx(-1.5).epsilon(1e-12));
        CHECK(x[3] == doctest::Approx(-1.5).epsilon(1e-12));
    }

    SUBCASE("right side (0,0,2,2) reproduces (1,1,-1,-1)") {
        const auto x = solve_small<double>(4, m, {0, 0, 2, 2});
        CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(x[2] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(x[3] == doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("solve_small rejects singular systems") {
    std::array<std::array<double, 4>, 4> a = {{
        {1, 2, 0, 0},
        {2, 4, 0, 0},
        {0, 0, 1, 0},
        {0, 0, 0, 1},
    }};
    CHECK_THROWS_AS((void)solve_small<double>(4, a, {1, 1, 1, 1}), SingularSystem);
}

TEST_CASE("pencil roots of the normalized-frame example") {
    const Mat2Sym a{0, 2, 3};
    const Mat2Sym b{1, 0, 1};
    const auto pr = pencil_roots(a, b);
    REQUIRE(pr.roots.size() == 2);
    // s^2 + 3 r s - 4 r^2 = 0 -> (1, 1) and (1, -4), ordered by s/r descending
    CHECK(pr.roots[0].r == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(pr.roots[0].s == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(pr.roots[1].r == doctest::Approx(1.0 / std::sqrt(17.0)));
    CHECK(pr.roots[1].s == doctest::Approx(-4.0 / std::sqrt(17.0)));
}

TEST_CASE("pencil with A = 0 has the single double root (1,0)") {
    const auto pr = pencil_roots(Mat2Sym{0, 0, 0}, Mat2Sym{1, 0, 1});
    REQUIRE(pr.roots.size() == 1);
    CHECK(pr.double_root);
    CHECK(pr.roots[0].r == 1.0);
    CHECK(pr.roots[0].s == 0.0);
}

TEST_CASE("pencil of two zero matrices vanishes identically") {
    const auto pr = pencil_roots(Mat2Sym{}, Mat2Sym{});
    CHECK(pr.all_pairs);
    CHECK(pr.roots.empty());
}

namespace {

// brute-force oracle: sign changes of det(cos(phi) A + sin(phi) B) over a
// 720-point sweep, refined by bisection
std::vector<double> sweep_root_angles(const Mat2Sym& a, const Mat2Sym& b) {
    auto det_at = [&](double phi) { return (std::cos(phi) * a + std::sin(phi) * b).det(); };
    std::vector<double> found;
    const int n = 720;
    for (int i = 0; i < n; ++i) {
        const double p0 = M_PI * i / n;  // roots come in antipodal pairs; sweep half the circle
        const double p1 = M_PI * (i + 1) / n;
        double f0 = det_at(p0), f1 = det_at(p1);
        if (f0 == 0.0) {
            found.push_back(p0);
            continue;
        }
        if (f0 * f1 < 0.0) {
            double lo = p0, hi = p1;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (det_at(lo) * det_at(mid) <= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            found.push_back(0.5 * (lo + hi));
        }
    }
    return found;
}

double angle_of(const HomPair& p) {
    double phi = std::atan2(p.s, p.r);
    if (phi < 0) phi += M_PI;  // identify antipodes
    if (phi >= M_PI) phi -= M_PI;
    return phi;
}

}  // namespace

TEST_CASE("pencil roots agree with the 720-point sweep oracle") {
    Rng rng(99);
    int with_roots = 0;
    for (int t = 0; t < 120; ++t) {
        Mat2Sym a{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Mat2Sym b{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const auto pr = pencil_roots(a, b);
        if (pr.double_root) continue;  // tangential zero: no sign change to find
        const auto swept = sweep_root_angles(a, b);
        REQUIRE(swept.size() == pr.roots.size());
        for (const auto& root : pr.roots) {
            const double phi = angle_of(root);
            double best = 1e9;
            for (double s : swept) {
                double d = std::abs(s - phi);
                d = std::min(d, std::abs(d - M_PI));
                best = std::min(best, d);
            }
            CHECK(best < 1e-6);
        }
        if (!pr.roots.empty()) ++with_roots;
    }
    CHECK(with_roots >= 40);
}

TEST_CASE("HomPair normalization is deterministic") {
    const HomPair p = HomPair::normalized(-2, 8);
    CHECK(p.r == doctest::Approx(2.0 / std::sqrt(68.0)));
    CHECK(p.s == doctest::Approx(-8.0 / std::sqrt(68.0)));
    const HomPair q = HomPair::normalized(0, -3);
    CHECK(q.r == 0.0);
    CHECK(q.s == 1.0);
    CHECK_THROWS_AS((void)HomPair::normalized(0, 0), ZeroVector);
}

TEST_CASE("kernel_direction returns a null vector of a singular matrix") {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        // rank-1 symmetric: w w^T
        const double w1 = rng.uniform(-2, 2), w2 = rng.uniform(-2, 2);
        if (std::abs(w1) + std::abs(w2) < 0.1) continue;
        const Mat2Sym m{w1 * w1, w1 * w2, w2 * w2};
        const HomPair k = kernel_direction(m);
        const double r1 = m.xx * k.r + m.xy * k.s;
        const double r2 = m.xy * k.r + m.yy * k.s;
        CHECK(std::hypot(r1, r2) < 1e-12 * (1.0 + m.max_abs()));
    }
}
