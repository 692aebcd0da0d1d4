#include "eis/lfun.hpp"

#include <algorithm>

namespace eis {

namespace mp = boost::multiprecision;

std::vector<Complex> dirichlet_coeffs(const HeckeChar& chi, long N, unsigned prec) {
    ScopedPrecision scoped(prec + 10);
    std::vector<Complex> c(N + 1);
    c[1] = Complex(Real(1));
    const FieldCtx& F = chi.ctx();
    for (long ell = 2; ell <= N; ++ell) {
        bool prime = ell >= 2;
        for (long q = 2; q * q <= ell; ++q)
            if (ell % q == 0) { prime = false; break; }
        if (!prime) continue;
        // local coefficients b_k at ell: sums over ideals of norm ell^k
        long kmax = 0;
        for (long pw = ell; pw <= N; pw *= ell) ++kmax;
        std::vector<Complex> b(kmax + 1);
        b[0] = Complex(Real(1));
        auto fp = factor_prime(F, ell);
        if (fp[0].first.split_type == SplitType::split) {
            Complex u(Real(0)), v(Real(0));
            bool cu = chi.ray().is_coprime(fp[0].first.ideal);
            bool cv = chi.ray().is_coprime(fp[1].first.ideal);
            if (cu) u = chi.eval_tilde(fp[0].first.ideal).embed(prec + 10);
            if (cv) v = chi.eval_tilde(fp[1].first.ideal).embed(prec + 10);
            for (long k = 1; k <= kmax; ++k)
                for (long i = 0; i <= k; ++i) {
                    if (i > 0 && !cu) continue;
                    if (k - i > 0 && !cv) continue;
                    b[k] += cpow(u, i) * cpow(v, k - i);
                }
        } else if (fp[0].first.split_type == SplitType::inert) {
            if (chi.ray().is_coprime(fp[0].first.ideal)) {
                Complex u = chi.eval_tilde(fp[0].first.ideal).embed(prec + 10);
                for (long k = 2; k <= kmax; k += 2) b[k] = cpow(u, k / 2);
            }
        } else {
            if (chi.ray().is_coprime(fp[0].first.ideal)) {
                Complex u = chi.eval_tilde(fp[0].first.ideal).embed(prec + 10);
                for (long k = 1; k <= kmax; ++k) b[k] = cpow(u, k);
            }
        }
        for (long n = N / ell; n >= 1; --n) {
            if (n % ell == 0 || c[n].abs() == 0) continue;
            long pw = ell;
            for (long k = 1; k <= kmax && n * pw <= N; ++k, pw *= ell)
                c[n * pw] += c[n] * b[k];
        }
    }
    return std::vector<Complex>(c.begin() + 1, c.end());
}

std::vector<Complex> dirichlet_coeffs_direct(const HeckeChar& chi, long N, unsigned prec) {
    ScopedPrecision scoped(prec + 10);
    const FieldCtx& F = chi.ctx();
    std::vector<Complex> c(N + 1);
    // integral ideals in HNF (a, b + c omega): c | a, c | b, ac | Nm(b + c omega)
    for (Int cc = 1; cc * cc <= N; ++cc)
        for (Int a = cc; a * cc <= N; a += cc)
            for (Int bb = 0; bb < a; bb += cc) {
                QuadElem g(F, Rat(bb), Rat(cc));
                if (Int(mp::numerator(g.norm())) % (a * cc) != 0) continue;
                FracIdeal I = FracIdeal::from_hnf(F, 1, a, bb, cc);
                if (!chi.ray().is_coprime(I)) continue;
                c[(long)Int(a * cc)] += chi.eval_tilde(I).embed(prec + 10);
            }
    c[1] = Complex(Real(1));  // the ring itself
    return std::vector<Complex>(c.begin() + 1, c.end());
}

namespace {

long pick_truncation(const Real& Q, unsigned prec, long max_coeffs) {
    Real n = Q * (prec + 18) * log(Real(10)) * Real(13) / 10;
    long N = (long)mpfr_get_d(n.backend().data(), MPFR_RNDU) + 8;
    if (N > max_coeffs) throw PrecisionUnreachable();
    return N;
}

Real series_Q(const HeckeChar& chi) {
    Rat A = Rat(-chi.ctx().disc()) * chi.modulus().norm();
    return sqrt(to_real(A)) / (2 * real_pi());
}

} // namespace

LSeries build_lseries(const HeckeChar& chi, unsigned prec, long max_coeffs) {
    ScopedPrecision scoped(prec + 15);
    LSeries s;
    s.prec = prec;
    s.mu = (chi.type_a() + chi.type_b()) / 2;
    s.Q = series_Q(chi);
    s.kappa = 0;
    long N = pick_truncation(s.Q, prec, max_coeffs);
    s.an = dirichlet_coeffs(chi, N, prec);
    return s;
}

LSeries zeta_series(const ClassGroup& cl, unsigned prec, long max_coeffs) {
    ScopedPrecision scoped(prec + 15);
    const FieldCtx& F = cl.ctx();
    HeckeChar triv = char_build(cl, FracIdeal::ring_of_integers(F), 0, 0)[0];
    LSeries s = build_lseries(triv, prec, max_coeffs);
    // residue of zeta_F at s=1: 2 pi h / (w sqrt(|d|))
    s.kappa = 2 * real_pi() * cl.h() /
              (F.unit_count() * sqrt(to_real(Rat(-F.disc()))));
    s.W = Complex(Real(1));
    s.w_known = true;
    return s;
}

namespace {

Complex cpow_c(const Complex& base, const Complex& e) { return cexp(clog(base) * e); }

// smoothed partial sums at splitting point x
Complex sumA(const LSeries& L, const Complex& s, const Real& x) {
    Complex acc(Real(0));
    for (size_t n = 1; n <= L.an.size(); ++n) {
        if (L.an[n - 1].abs() == 0) continue;
        Complex term = L.an[n - 1] * cpow_c(Complex(L.Q / (long)n), s) *
                       upper_gamma(s + Complex(Real(L.mu)), x * (long)n / L.Q);
        acc += term;
    }
    return acc;
}

Complex sumB(const LSeries& L, const Complex& s, const Real& x) {
    Complex acc(Real(0));
    Complex s1 = Complex(Real(1)) - s;
    for (size_t n = 1; n <= L.an.size(); ++n) {
        if (L.an[n - 1].abs() == 0) continue;
        Complex term = L.an[n - 1].conj() * cpow_c(Complex(L.Q / (long)n), s1) *
                       upper_gamma(s1 + Complex(Real(L.mu)), (long)n / (x * L.Q));
        acc += term;
    }
    return acc;
}

Complex polar(const LSeries& L, const Complex& s, const Real& x) {
    if (L.kappa == 0) return Complex(Real(0));
    Complex alpha(L.Q * L.kappa);
    return alpha * cpow_c(Complex(x), s - Complex(Real(1))) / (s - Complex(Real(1))) -
           alpha * cpow_c(Complex(x), s) / s;
}

} // namespace

LEvalResult l_eval(const LSeries& series, const Complex& s, unsigned prec) {
    ScopedPrecision scoped(prec + 15);
    Real x1(1), x2 = Real(6) / 5;
    Complex A1 = sumA(series, s, x1), B1 = sumB(series, s, x1);
    Complex A2 = sumA(series, s, x2), B2 = sumB(series, s, x2);
    Complex P1 = polar(series, s, x1), P2 = polar(series, s, x2);
    Complex W;
    Real residual;
    if (series.w_known) {
        W = series.W;
        residual = ((A1 + W * B1 + P1) - (A2 + W * B2 + P2)).abs();
    } else {
        W = ((A2 + P2) - (A1 + P1)) / (B1 - B2);
        Real x3 = Real(4) / 5;
        Complex A3 = sumA(series, s, x3), B3 = sumB(series, s, x3);
        Complex P3 = polar(series, s, x3);
        residual = ((A1 + W * B1 + P1) - (A3 + W * B3 + P3)).abs();
    }
    LEvalResult r;
    r.completed = A1 + W * B1 + P1;
    r.value = r.completed / (cpow_c(Complex(series.Q), s) *
                             cgamma(s + Complex(Real(series.mu))));
    r.residual = residual;
    r.truncation = (long)series.an.size();
    return r;
}

Complex root_number(const HeckeChar& chi, RootNumberMode mode, unsigned prec) {
    ScopedPrecision scoped(prec + 15);
    if (mode == RootNumberMode::formula) {
        FracIdeal dd = FracIdeal::principal(chi.ctx().sqrt_d());
        if (!chi.ray().is_coprime(dd)) throw RamifiedFormulaUnsupported();
        long k = chi.type_a() + chi.type_b();
        Complex ik = cpow(Complex(Real(0), Real(1)), k);
        return ik / chi.eval_tilde(dd).embed(prec + 15);
    }
    LSeries s = build_lseries(chi, prec);
    Complex at(Real(3) / 4);
    Real x1(1), x2 = Real(6) / 5;
    Complex A1 = sumA(s, at, x1), B1 = sumB(s, at, x1);
    Complex A2 = sumA(s, at, x2), B2 = sumB(s, at, x2);
    return (A2 - A1) / (B1 - B2);
}

// ---- periods ----

namespace {

struct ShortW {  // y^2 = 4x^3 - g2 x - g3
    Rat g2, g3;
};

ShortW shift_model(const Curve& E) {
    Rat b2 = Rat(E.a1 * E.a1 + 4 * E.a2);
    Rat b4 = Rat(2 * E.a4 + E.a1 * E.a3);
    Rat b6 = Rat(E.a3 * E.a3 + 4 * E.a6);
    Rat b8 = Rat(E.a1 * E.a1 * E.a6 + 4 * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 +
                 E.a2 * E.a3 * E.a3 - E.a4 * E.a4);
    Rat disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0) throw SingularCurve();
    Rat c4 = b2 * b2 - 24 * b4;
    Rat c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    return {c4 / 12, c6 / 216};
}

// roots of 4x^3 - g2 x - g3, real first (largest real when three)
std::vector<Complex> cubic_roots(const ShortW& m) {
    // t^3 + p t + q with t = x, p = -g2/4, q = -g3/4
    Real p = -to_real(m.g2) / 4, q = -to_real(m.g3) / 4;
    Real disc = -4 * p * p * p - 27 * q * q;
    std::vector<Complex> roots;
    if (disc > 0) {
        Real r = 2 * sqrt(-p / 3);
        Real phi = acos(3 * q / (2 * p) * sqrt(Real(-3) / p));
        for (int k = 0; k < 3; ++k)
            roots.push_back(Complex(r * cos((phi - 2 * real_pi() * k) / 3)));
        std::sort(roots.begin(), roots.end(),
                  [](const Complex& a, const Complex& b) { return a.re > b.re; });
    } else {
        Real s = sqrt(q * q / 4 + p * p * p / 27);
        Real u = cbrt(-q / 2 + s), v = cbrt(-q / 2 - s);
        Real e1 = u + v;
        Real reim = sqrt(Real(3)) * (u - v) / 2;
        roots.push_back(Complex(e1));
        roots.push_back(Complex(-e1 / 2, reim));
        roots.push_back(Complex(-e1 / 2, -reim));
    }
    // Newton polish on 4x^3 - g2 x - g3
    Complex g2(to_real(m.g2)), g3(to_real(m.g3));
    for (auto& z : roots)
        for (int it = 0; it < 8; ++it) {
            Complex f = Complex(Real(4)) * z * z * z - g2 * z - g3;
            Complex df = Complex(Real(12)) * z * z - g2;
            z = z - f / df;
        }
    return roots;
}

} // namespace

Real neron_period(const Curve& E, unsigned prec) {
    ScopedPrecision scoped(prec + 15);
    ShortW m = shift_model(E);
    auto e = cubic_roots(m);
    if (abs(e[0].im) + abs(e[1].im) + abs(e[2].im) <
        pow(Real(10), -(long)prec)) {
        // rectangular lattice: real half-period of dx/y on the unbounded branch
        return real_pi() / agm(sqrt(e[0].re - e[2].re), sqrt(e[0].re - e[1].re));
    }
    // one real root e1 = e[0]: real period via the classical real-AGM reduction
    Real e1 = e[0].re;
    Real mre = e[1].re, nim = abs(e[1].im);
    Real A = sqrt((e1 - mre) * (e1 - mre) + nim * nim);
    // 2 int_{e1}^inf dx / sqrt(4(x-e1)((x-m)^2+n^2)) = pi / AGM(sqrt(A), sqrt((A + e1 - m)/2))
    return real_pi() / agm(sqrt(A), sqrt((A + e1 - mre) / 2));
}

Real chowla_selberg_ratio(const Curve& E, const FieldCtx& F, unsigned prec) {
    ScopedPrecision scoped(prec + 15);
    Real omega = neron_period(E, prec);
    long D = (long)Int(-F.disc());
    ClassGroup cl(F);
    Real logprod = 0;
    for (long k = 1; k < D; ++k) {
        int chi = mpz_kronecker_si(Int(F.disc()).backend().data(), k);
        if (chi == 0) continue;
        logprod += chi * log(real_gamma(Real(k) / D));
    }
    Real cs = sqrt(2 * real_pi() / sqrt(Real(D))) *
              exp(logprod * F.unit_count() / (4 * cl.h()));
    return omega / cs;
}

// ---- reports ----

std::optional<Rat> rational_reconstruct(const Real& x, const Int& den_bound, const Real& tol) {
    // continued fraction expansion of x
    Real v = x;
    Int p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // convergents
    for (int it = 0; it < 300; ++it) {
        Real fl = floor(v);
        if (abs(fl) > Real("1e15")) break;  // partial quotient blowup: x is "irrational"
        Int a(fl.convert_to<long long>());
        Int p = a * p0 + p1, q = a * q0 + q1;
        if (q > den_bound) break;
        p1 = p0; q1 = q0; p0 = p; q0 = q;
        Rat cand(p0, q0);
        if (abs(x - to_real(cand)) < tol) return cand;
        Real frac = v - fl;
        if (frac < tol) break;
        v = 1 / frac;
    }
    return std::nullopt;
}

long rat_val(const Rat& r, const Int& p) {
    if (r == 0) throw NoValuation();
    long v = 0;
    Int n = Int(mp::numerator(r)), d = Int(mp::denominator(r));
    while (n % p == 0) { n /= p; ++v; }
    while (d % p == 0) { d /= p; --v; }
    return v;
}

LValueReport l_alg_report(const HeckeChar& chi, const Int& p, const Real& Omega,
                          unsigned prec) {
    ScopedPrecision scoped(prec + 15);
    if (chi.type_b() != 0 || chi.type_a() < 2)
        throw Error("report requires infinity type (a,0), a >= 2");
    if (!chi.ray().is_coprime(FracIdeal::principal(QuadElem(chi.ctx(), Rat(p), 0))))
        throw ConductorNotCoprime();
    auto fp = factor_prime(chi.ctx(), p);
    if (fp[0].first.split_type == SplitType::ramified)
        throw Error("p must be unramified in F");

    LValueReport rep;
    rep.Omega = Omega;
    LSeries s = build_lseries(chi, prec);
    s.W = root_number(chi, RootNumberMode::formula, prec);
    s.w_known = true;
    LEvalResult ev = l_eval(s, Complex(Real(1)), prec);  // L(0,chi) = L(1, tilde)
    rep.L0 = ev.value;
    rep.residual = ev.residual;
    rep.truncation = ev.truncation;

    long a = chi.type_a();
    // L_alg = Omega^{-a} * Gamma(a) * L0  (b = 0)
    Real ga = real_gamma(Real(a));
    rep.L_alg_float = rep.L0 * Complex(ga / pow(Omega, (int)a));

    Real tol = pow(Real(10), -(long)(prec / 2));
    if (abs(rep.L_alg_float.im) < tol) {
        auto rec = rational_reconstruct(rep.L_alg_float.re, Int(1000000), tol);
        if (rec) {
            rep.L_alg_rational = *rec;
            rep.reconstruction_error = abs(rep.L_alg_float.re - to_real(*rec));
            if (*rec == 0) {
                rep.val_p = std::nullopt;
            } else {
                rep.val_p = rat_val(*rec, p);
            }
        }
    }
    if (rep.val_p && rep.L_alg_rational)
        rep.L_int = *rep.val_p >= 0 ? *rep.L_alg_rational : Rat(1);
    return rep;
}

LValueReport l_alg_report(const HeckeChar& chi, const Int& p, const Curve& curve,
                          unsigned prec) {
    return l_alg_report(chi, p, neron_period(curve, prec), prec);
}

} // namespace eis
