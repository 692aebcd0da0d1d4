#pragma once

#include <optional>

#include "eis/characters.hpp"
#include "eis/special.hpp"

namespace eis {

// Dirichlet series sum a_n n^{-s} completed with Q^s Gamma(s + mu), satisfying
// Lambda(s) = W * conj-Lambda(1-s).  kappa != 0 marks a zeta-type series with
// simple poles at s = 0, 1 (residue parameter kappa = res_{s=1} of the plain
// Dirichlet series).
struct LSeries {
    std::vector<Complex> an;  // an[n-1] = a_n
    Real Q;                   // sqrt(|d| Nm(f)) / (2 pi)
    long mu = 0;              // Gamma shift (a+b)/2
    Complex W;
    bool w_known = false;
    Real kappa;               // 0 for entire series
    unsigned prec = 50;
};

// a_n = sum over ideals of norm n coprime to the conductor of unitarized
// chi-tilde values, by multiplicative prime-power convolution.
std::vector<Complex> dirichlet_coeffs(const HeckeChar& chi, long N, unsigned prec);

// Brute-force oracle: same sums by direct HNF enumeration of integral ideals.
std::vector<Complex> dirichlet_coeffs_direct(const HeckeChar& chi, long N, unsigned prec);

LSeries build_lseries(const HeckeChar& chi, unsigned prec, long max_coeffs = 200000);
// Dedekind zeta of the field as an LSeries (trivial character, with poles).
LSeries zeta_series(const ClassGroup& cl, unsigned prec, long max_coeffs = 200000);

struct LEvalResult {
    Complex value;     // L(s)
    Complex completed; // Lambda(s)
    Real residual;     // splitting-point independence defect
    long truncation;
};
LEvalResult l_eval(const LSeries& series, const Complex& s, unsigned prec);

enum class RootNumberMode { formula, numeric };
Complex root_number(const HeckeChar& chi, RootNumberMode mode, unsigned prec);

struct Curve {
    Int a1, a2, a3, a4, a6;
};

// Least positive real period of the Neron differential dx/(2y + a1 x + a3),
// by AGM on the roots of the shifted 4x^3 - g2 x - g3 model.
Real neron_period(const Curve& E, unsigned prec);
// Diagnostic: ratio of the AGM period to the Chowla-Selberg Gamma product.
Real chowla_selberg_ratio(const Curve& E, const FieldCtx& F, unsigned prec);

struct LValueReport {
    Complex L0;
    Real Omega;
    Complex L_alg_float;
    std::optional<Rat> L_alg_rational;
    Rat L_int = 0;
    std::optional<long> val_p;
    Real residual;
    Real reconstruction_error;
    long truncation = 0;
};

LValueReport l_alg_report(const HeckeChar& chi, const Int& p, const Curve& curve,
                          unsigned prec);
LValueReport l_alg_report(const HeckeChar& chi, const Int& p, const Real& Omega,
                          unsigned prec);

// Continued-fraction rational recognition: nearest p/q with q <= den_bound
// and |x - p/q| < tol, if any.
std::optional<Rat> rational_reconstruct(const Real& x, const Int& den_bound, const Real& tol);

long rat_val(const Rat& r, const Int& p);  // p-adic valuation; NoValuation on 0

} // namespace eis
