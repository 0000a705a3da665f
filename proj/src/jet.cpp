#include "affine4/jet.hpp"

namespace affine4 {

namespace {
// binom[i][k] = C(i, k) for i <= 3
constexpr double kBinom[4][4] = {
    {1, 0, 0, 0},
    {1, 1, 0, 0},
    {1, 2, 1, 0},
    {1, 3, 3, 1},
};
}  // namespace

Jet3 operator*(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int i = 0; i <= 3; ++i) {
        for (int j = 0; i + j <= 3; ++j) {
            double sum = 0.0;
            for (int p = 0; p <= i; ++p) {
                for (int q = 0; q <= j; ++q) {
                    sum += kBinom[i][p] * kBinom[j][q] * a.at(p, q) * b.at(i - p, j - q);
                }
            }
            r.at(i, j) = sum;
        }
    }
    return r;
}

Jet3 compose(const Jet3& f, double t0, double t1, double t2, double t3) {
    Jet3 w = f;
    w.at(0, 0) = 0.0;  // perturbation part: zero constant term, so w^4 truncates away
    Jet3 r = w * Jet3(t3);
    r.at(0, 0) += t2;
    r = w * r;
    r.at(0, 0) += t1;
    r = w * r;
    r.at(0, 0) += t0;
    return r;
}

Jet3 inv(const Jet3& a) {
    const double v = a.value();
    if (v == 0.0) throw DomainError("jet division by zero-value jet");
    const double iv = 1.0 / v;
    return compose(a, iv, -iv * iv, iv * iv * iv, -iv * iv * iv * iv);
}

Jet3 operator/(const Jet3& a, const Jet3& b) { return a * inv(b); }

Jet3 operator/(double s, const Jet3& b) { return inv(b) * s; }

Jet3 sqrt(const Jet3& a) {
    const double v = a.value();
    if (!(v > 0.0)) throw DomainError("jet sqrt of non-positive value");
    const double r = std::sqrt(v);
    return compose(a, r, 0.5 / r, -1.0 / (8.0 * v * r), 1.0 / (16.0 * v * v * r));
}

Jet3 exp(const Jet3& a) {
    const double e = std::exp(a.value());
    return compose(a, e, e, e / 2.0, e / 6.0);
}

Jet3 log(const Jet3& a) {
    const double v = a.value();
    if (!(v > 0.0)) throw DomainError("jet log of non-positive value");
    const double iv = 1.0 / v;
    return compose(a, std::log(v), iv, -iv * iv / 2.0, iv * iv * iv / 3.0);
}

Jet3 sin(const Jet3& a) {
    const double s = std::sin(a.value());
    const double c = std::cos(a.value());
    return compose(a, s, c, -s / 2.0, -c / 6.0);
}

Jet3 cos(const Jet3& a) {
    const double s = std::sin(a.value());
    const double c = std::cos(a.value());
    return compose(a, c, -s, -c / 2.0, s / 6.0);
}

Jet3 pow_int(const Jet3& a, int n) {
    if (n < 0) return inv(pow_int(a, -n));
    Jet3 r(1.0);
    Jet3 base = a;
    unsigned e = static_cast<unsigned>(n);
    while (e > 0) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

std::ostream& operator<<(std::ostream& os, const Jet3& j) {
    os << "jet{" << j.value() << "; du=" << j.du() << ", dv=" << j.dv() << "}";
    return os;
}

}  // namespace affine4
