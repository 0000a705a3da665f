#pragma once

#include <array>
#include <cmath>
#include <ostream>

#include "affine4/errors.hpp"

namespace affine4 {

/// Truncated Taylor jet of a scalar function of (u, v), all partial
/// derivatives up to total order 3 at a base point.
///
/// Coefficients are *raw* partials d^{i+j} f / du^i dv^j (not divided by
/// factorials), so entries substitute directly into curvature formulas.
/// Arithmetic is exact truncation: products obey the Leibniz rule up to
/// total order 3, and analytic functions are applied through their
/// degree-3 Taylor polynomial in the perturbation part.
class Jet3 {
  public:
    static constexpr int kCoeffs = 10;

    Jet3() : c_{} {}
    explicit Jet3(double value) : c_{} { c_[0] = value; }

    /// Jet of the coordinate function u (resp. v) at a point.
    static Jet3 variable_u(double value) {
        Jet3 j(value);
        j.c_[index(1, 0)] = 1.0;
        return j;
    }
    static Jet3 variable_v(double value) {
        Jet3 j(value);
        j.c_[index(0, 1)] = 1.0;
        return j;
    }
    static Jet3 constant(double value) { return Jet3(value); }

    /// Raw partial d^{i+j} f / du^i dv^j, i + j <= 3.
    double at(int i, int j) const { return c_[index(i, j)]; }
    double& at(int i, int j) { return c_[index(i, j)]; }

    double value() const { return c_[0]; }
    double du() const { return c_[1]; }
    double dv() const { return c_[2]; }
    double duu() const { return c_[3]; }
    double duv() const { return c_[4]; }
    double dvv() const { return c_[5]; }
    double duuu() const { return c_[6]; }
    double duuv() const { return c_[7]; }
    double duvv() const { return c_[8]; }
    double dvvv() const { return c_[9]; }

    /// Jet of df/du (top-order coefficients of the result are unknown and
    /// set to zero; callers may only rely on one order less than the input).
    Jet3 d_du() const {
        Jet3 r;
        for (int i = 0; i + 1 <= 3; ++i)
            for (int j = 0; i + 1 + j <= 3; ++j) r.at(i, j) = at(i + 1, j);
        return r;
    }
    Jet3 d_dv() const {
        Jet3 r;
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; i + j + 1 <= 3; ++j) r.at(i, j) = at(i, j + 1);
        return r;
    }

    Jet3 operator-() const {
        Jet3 r;
        for (int k = 0; k < kCoeffs; ++k) r.c_[k] = -c_[k];
        return r;
    }

    Jet3& operator+=(const Jet3& o) {
        for (int k = 0; k < kCoeffs; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet3& operator-=(const Jet3& o) {
        for (int k = 0; k < kCoeffs; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet3& operator*=(double s) {
        for (int k = 0; k < kCoeffs; ++k) c_[k] *= s;
        return *this;
    }

    friend Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
    friend Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
    friend Jet3 operator+(Jet3 a, double s) {
        a.c_[0] += s;
        return a;
    }
    friend Jet3 operator+(double s, Jet3 a) {
        a.c_[0] += s;
        return a;
    }
    friend Jet3 operator-(Jet3 a, double s) {
        a.c_[0] -= s;
        return a;
    }
    friend Jet3 operator-(double s, const Jet3& a) { return -a + s; }
    friend Jet3 operator*(Jet3 a, double s) { return a *= s; }
    friend Jet3 operator*(double s, Jet3 a) { return a *= s; }
    friend Jet3 operator/(Jet3 a, double s) { return a *= (1.0 / s); }

    /// Leibniz product, exact to total order 3.
    friend Jet3 operator*(const Jet3& a, const Jet3& b);
    friend Jet3 operator/(const Jet3& a, const Jet3& b);
    friend Jet3 operator/(double s, const Jet3& b);

    friend std::ostream& operator<<(std::ostream& os, const Jet3& j);

    std::array<double, kCoeffs>& raw() { return c_; }
    const std::array<double, kCoeffs>& raw() const { return c_; }

    static int index(int i, int j) {
        // (0,0) (1,0) (0,1) (2,0) (1,1) (0,2) (3,0) (2,1) (1,2) (0,3)
        static constexpr int base[4] = {0, 1, 3, 6};
        return base[i + j] + j;
    }

  private:
    std::array<double, kCoeffs> c_;
};

Jet3 inv(const Jet3& a);
Jet3 sqrt(const Jet3& a);
Jet3 exp(const Jet3& a);
Jet3 log(const Jet3& a);
Jet3 sin(const Jet3& a);
Jet3 cos(const Jet3& a);
/// Integer power; negative exponents require a nonzero value.
Jet3 pow_int(const Jet3& a, int n);

/// phi(f) for analytic phi with Taylor coefficients t0..t3 at f.value():
/// tk = phi^(k)(f0) / k!. Exact for truncation order 3.
Jet3 compose(const Jet3& f, double t0, double t1, double t2, double t3);

inline double value_abs(const Jet3& j) { return std::abs(j.value()); }
inline double value_abs(double x) { return std::abs(x); }
inline double value_of(const Jet3& j) { return j.value(); }
inline double value_of(double x) { return x; }

}  // namespace affine4
