#pragma once

#include <functional>

#include "eis/numeric.hpp"

namespace eis {

// Gamma(z) on the real line at current working precision.
Real real_gamma(const Real& x);

// Principal log Gamma via Stirling with argument shift.
Complex log_gamma(const Complex& z);
Complex cgamma(const Complex& z);

// Upper incomplete Gamma(a, x) for x > 0 and complex a, by the Legendre
// continued fraction (modified Lentz).  Accurate at current precision for
// the x >~ 0.3 range used by the L-evaluator.
Complex upper_gamma(const Complex& a, const Real& x);

// Arithmetic-geometric means.
Real agm(Real a, Real b);
Complex cagm(Complex a, Complex b);  // optimal (principal) branch at every step

// Bernoulli number B_{2n} as an exact rational.
Rat bernoulli2n(unsigned n);

// Tanh-sinh quadrature of f on (a, b), endpoint singularities allowed.
Real tanh_sinh(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
               unsigned digits10);

} // namespace eis
