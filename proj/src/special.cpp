#include "eis/special.hpp"

#include <map>
#include <vector>

namespace eis {

namespace mp = boost::multiprecision;

Real real_gamma(const Real& x) {
    Real r;
    mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

Rat bernoulli2n(unsigned n) {
    static std::vector<Rat> all = {Rat(1), Rat(-1, 2)};
    while (all.size() <= 2 * n) {
        // sum_{k=0}^{m} C(m+1,k) B_k = 0
        size_t m = all.size();
        Rat s = 0;
        Int binom = 1;
        for (size_t k = 0; k < m; ++k) {
            s += Rat(binom) * all[k];
            binom = binom * Int(m + 1 - k) / Int(k + 1);
        }
        all.push_back(-s / Rat(binom));
    }
    return all[2 * n];
}

Complex log_gamma(const Complex& z) {
    unsigned digits = Real::default_precision();
    long shift_to = (long)(digits * 0.55) + 12;
    Complex w = z;
    Complex corr(Real(0));
    while (w.re < shift_to) {
        corr += clog(w);
        w = w + Complex(Real(1));
    }
    // Stirling: (w - 1/2) log w - w + log(2 pi)/2 + sum B_2n / (2n(2n-1) w^{2n-1})
    Complex lg = (w - Complex(Real(1) / 2)) * clog(w) - w +
                 Complex(log(2 * real_pi()) / 2);
    Complex winv = Complex(Real(1)) / w;
    Complex wpow = winv;
    Complex w2 = winv * winv;
    Real tol = pow(Real(10), -(long)digits - 5);
    for (unsigned k = 1; k < 200; ++k) {
        Complex term = Complex(to_real(bernoulli2n(k) / Rat(2 * k * (2 * k - 1)))) * wpow;
        lg += term;
        if (term.abs() < tol) break;
        wpow *= w2;
    }
    return lg - corr;
}

Complex cgamma(const Complex& z) { return cexp(log_gamma(z)); }

Complex upper_gamma(const Complex& a, const Real& x) {
    unsigned digits = Real::default_precision();
    Real tiny = pow(Real(10), -(long)(2 * digits) - 30);
    Real tol = pow(Real(10), -(long)digits - 5);
    // Gamma(a,x) = e^{-x} x^a / (x+1-a - 1(1-a)/(x+3-a - 2(2-a)/(...)))
    // evaluated by modified Lentz on b0 + K(ai/bi), ai = -i(i-a), bi = b0+2i.
    Complex b = Complex(x + 1) - a;
    if (b.abs() < tiny) b = Complex(tiny);
    Complex f = b, c = b, d(Real(0));
    for (long i = 1; i < 100000; ++i) {
        Complex ai = (a - Complex(Real(i))) * Complex(Real(i));
        b += Complex(Real(2));
        d = ai * d + b;
        if (d.abs() < tiny) d = Complex(tiny);
        c = b + ai / c;
        if (c.abs() < tiny) c = Complex(tiny);
        d = Complex(Real(1)) / d;
        Complex delta = d * c;
        f *= delta;
        if ((delta - Complex(Real(1))).abs() < tol)
            return cexp(Complex(-x) + a * Complex(log(x))) / f;
    }
    throw PrecisionUnreachable();
}

Real agm(Real a, Real b) {
    Real tol = pow(Real(10), -(long)Real::default_precision() + 2);
    while (abs(a - b) > tol * abs(a)) {
        Real m = (a + b) / 2;
        b = sqrt(a * b);
        a = m;
    }
    return (a + b) / 2;
}

Complex cagm(Complex a, Complex b) {
    Real tol = pow(Real(10), -(long)Real::default_precision() + 2);
    for (int i = 0; i < 10000; ++i) {
        if ((a - b).abs() <= tol * a.abs()) break;
        Complex m = (a + b) * Complex(Real(1) / 2);
        Complex g = csqrt(a * b);
        // right branch: |m - g| <= |m + g|, ties broken toward Im(g/m) > 0
        Real dm = (m - g).abs(), dp = (m + g).abs();
        if (dm > dp || (dm == dp && (g / m).im < 0)) g = -g;
        a = m;
        b = g;
    }
    return (a + b) * Complex(Real(1) / 2);
}

Real tanh_sinh(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
               unsigned digits10) {
    ScopedPrecision prec(digits10 + 15);
    Real half = (b - a) / 2, mid = (a + b) / 2;
    Real pih = real_pi() / 2;
    Real best = 0;
    Real tol = pow(Real(10), -(long)digits10 - 3);
    for (int level = 3; level <= 12; ++level) {
        Real h = pow(Real(2), -level);
        Real sum = 0;
        long K = (long)(8.0 / mpfr_get_d(h.backend().data(), MPFR_RNDN));
        for (long k = -K; k <= K; ++k) {
            Real t = h * k;
            Real sh = pih * sinh(t);
            Real w = pih * cosh(t) / (cosh(sh) * cosh(sh));
            Real x = mid + half * tanh(sh);
            if (x <= a || x >= b) continue;
            sum += w * f(x);
        }
        Real val = sum * h * half;
        if (level > 3 && abs(val - best) < tol * (abs(val) + 1)) return val;
        best = val;
    }
    return best;
}

} // namespace eis
