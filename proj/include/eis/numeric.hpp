#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include "eis/field.hpp"

namespace eis {

using Real = boost::multiprecision::mpfr_float;

// Scoped working precision in decimal digits for all Real temporaries.
struct ScopedPrecision {
    unsigned saved;
    explicit ScopedPrecision(unsigned digits10)
        : saved(Real::default_precision()) {
        Real::default_precision(digits10);
    }
    ~ScopedPrecision() { Real::default_precision(saved); }
};

// Complex numbers over Real; mpfr has no native complex type here, so the
// handful of operations we need are spelled out.
struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(const Real& r) : re(r), im(0) {}
    Complex(const Real& r, const Real& i) : re(r), im(i) {}

    Complex conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }
    Real abs() const { return sqrt(norm2()); }

    Complex operator-() const { return {-re, -im}; }
    Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
    Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
    Complex operator*(const Complex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Complex operator/(const Complex& o) const {
        Real n = o.norm2();
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }
};

inline Real real_pi() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

inline Complex cexp(const Complex& z) {
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

// Principal logarithm, Arg in (-pi, pi].
inline Complex clog(const Complex& z) {
    return {log(z.abs()), atan2(z.im, z.re)};
}

inline Complex cpow(const Complex& z, long e) {
    Complex r(Real(1)), b = z;
    bool neg = e < 0;
    unsigned long k = neg ? -(unsigned long)e : (unsigned long)e;
    for (; k; k >>= 1) {
        if (k & 1) r *= b;
        b *= b;
    }
    return neg ? Complex(Real(1)) / r : r;
}

inline Complex csqrt(const Complex& z) { return cexp(clog(z) * Complex(Real(1) / 2)); }

inline Real to_real(const Rat& r) {
    return Real(numerator(r).str()) / Real(denominator(r).str());
}

// Embedding of F into C sending sqrt(d) to the upper half plane.
inline Complex embed(const QuadElem& z) {
    const FieldCtx& F = z.ctx();
    Real rootd = sqrt(Real(Int(-F.disc()).str()));
    Real t = to_real(Rat(F.omega_trace()));
    // omega = (t + sqrt(d))/2
    Real y = to_real(z.y());
    return {to_real(z.x()) + y * t / 2, y * rootd / 2};
}

// e^{2 pi i q}
inline Complex root_of_unity(const Rat& q) {
    Real a = 2 * real_pi() * to_real(q);
    return {cos(a), sin(a)};
}

// Principal n-th root exp(Log(z)/n).
inline Complex principal_root(const Complex& z, long n) {
    return cexp(clog(z) * Complex(Real(1) / n));
}

} // namespace eis
