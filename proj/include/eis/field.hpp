#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <iosfwd>
#include <vector>

#include "eis/errors.hpp"

namespace eis {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

class QuadElem;

// Imaginary quadratic field F = Q(sqrt(d)) for a fundamental discriminant
// d < 0.  The ring of integers is Z[omega] with
//   omega = sqrt(d)/2      if d = 0 mod 4   (omega^2 = d/4)
//   omega = (1+sqrt(d))/2  if d = 1 mod 4   (omega^2 = omega + (d-1)/4).
// Both cases are captured by omega^2 = t*omega + n0 with t = Tr(omega).
class FieldCtx {
public:
    explicit FieldCtx(const Int& d);

    const Int& disc() const { return d_; }
    const Int& omega_trace() const { return t_; }      // t in {0,1}
    const Int& omega_sq_const() const { return n0_; }  // omega^2 = t*omega + n0
    int unit_count() const { return w_; }

    // Roots of unity in O*, starting with 1.
    const std::vector<QuadElem>& units() const;

    QuadElem omega() const;
    QuadElem sqrt_d() const;  // sqrt(d) = 2*omega - t, a generator of the different
    QuadElem from_rational(const Rat& r) const;

    static bool is_fundamental(const Int& d);

    bool operator==(const FieldCtx& o) const { return d_ == o.d_; }

private:
    Int d_;
    Int t_;
    Int n0_;
    int w_;
    mutable std::vector<QuadElem> units_;
};

// Element x + y*omega of F, with exact rational coordinates.
class QuadElem {
public:
    QuadElem() : ctx_(nullptr) {}
    QuadElem(const FieldCtx& ctx, const Rat& x, const Rat& y)
        : ctx_(&ctx), x_(x), y_(y) {}

    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }
    const FieldCtx& ctx() const { return *ctx_; }
    bool has_ctx() const { return ctx_ != nullptr; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_rational() const { return y_ == 0; }
    bool is_integral() const;

    QuadElem conj() const;
    Rat norm() const;   // z * conj(z), nonnegative
    Rat trace() const;  // z + conj(z)
    QuadElem inv() const;

    QuadElem operator-() const { return QuadElem(*ctx_, -x_, -y_); }
    QuadElem operator+(const QuadElem& o) const;
    QuadElem operator-(const QuadElem& o) const;
    QuadElem operator*(const QuadElem& o) const;
    QuadElem operator/(const QuadElem& o) const;
    QuadElem operator*(const Rat& r) const { return QuadElem(*ctx_, x_ * r, y_ * r); }
    QuadElem operator/(const Rat& r) const;

    bool operator==(const QuadElem& o) const { return x_ == o.x_ && y_ == o.y_; }
    bool operator!=(const QuadElem& o) const { return !(*this == o); }

    QuadElem pow(long e) const;

private:
    void check_same(const QuadElem& o) const;
    const FieldCtx* ctx_;
    Rat x_, y_;
};

std::ostream& operator<<(std::ostream& os, const QuadElem& z);

} // namespace eis
