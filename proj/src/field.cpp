#include "eis/field.hpp"

#include <ostream>

namespace eis {

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

bool squarefree(Int n) {
    n = abs_int(n);
    for (Int k = 2; k * k <= n; ++k)
        if (n % (k * k) == 0) return false;
    return true;
}

} // namespace

bool FieldCtx::is_fundamental(const Int& d) {
    if (d >= 0) return false;
    Int m = d % 4;
    if (m < 0) m += 4;
    if (m == 1) return squarefree(d);
    if (m == 0) {
        Int q = d / 4;
        Int qm = q % 4;
        if (qm < 0) qm += 4;
        return squarefree(q) && (qm == 2 || qm == 3);
    }
    return false;
}

FieldCtx::FieldCtx(const Int& d) : d_(d) {
    if (!is_fundamental(d))
        throw Error("FieldCtx: not a fundamental negative discriminant");
    Int m = ((d % 4) + 4) % 4;
    if (m == 0) {
        t_ = 0;
        n0_ = d / 4;
    } else {
        t_ = 1;
        n0_ = (d - 1) / 4;
    }
    w_ = (d == -4) ? 4 : (d == -3) ? 6 : 2;
}

const std::vector<QuadElem>& FieldCtx::units() const {
    if (units_.empty()) {
        QuadElem one(*this, 1, 0);
        units_.push_back(one);
        units_.push_back(-one);
        if (d_ == -4) {
            QuadElem i = omega();  // omega = sqrt(-1)
            units_.push_back(i);
            units_.push_back(-i);
        } else if (d_ == -3) {
            QuadElem z = omega();  // omega = (1+sqrt(-3))/2, a 6th root of unity
            units_.clear();
            QuadElem u(*this, 1, 0);
            for (int k = 0; k < 6; ++k) {
                units_.push_back(u);
                u = u * z;
            }
        }
    }
    return units_;
}

QuadElem FieldCtx::omega() const { return QuadElem(*this, 0, 1); }

QuadElem FieldCtx::sqrt_d() const { return QuadElem(*this, Rat(-t_), 2); }

QuadElem FieldCtx::from_rational(const Rat& r) const { return QuadElem(*this, r, 0); }

void QuadElem::check_same(const QuadElem& o) const {
    if (ctx_ == nullptr || o.ctx_ == nullptr)
        throw MixedFields("QuadElem without field context");
    if (!(*ctx_ == *o.ctx_)) throw MixedFields();
}

bool QuadElem::is_integral() const {
    return boost::multiprecision::denominator(x_) == 1 &&
           boost::multiprecision::denominator(y_) == 1;
}

QuadElem QuadElem::conj() const {
    // conj(x + y*omega) = x + y*(t - omega)
    return QuadElem(*ctx_, x_ + y_ * Rat(ctx_->omega_trace()), -y_);
}

Rat QuadElem::norm() const {
    // Nm(x + y*omega) = x^2 + t*x*y - n0*y^2
    return x_ * x_ + Rat(ctx_->omega_trace()) * x_ * y_ -
           Rat(ctx_->omega_sq_const()) * y_ * y_;
}

Rat QuadElem::trace() const { return 2 * x_ + Rat(ctx_->omega_trace()) * y_; }

QuadElem QuadElem::inv() const {
    if (is_zero()) throw DivisionByZero();
    Rat n = norm();
    QuadElem c = conj();
    return QuadElem(*ctx_, c.x_ / n, c.y_ / n);
}

QuadElem QuadElem::operator+(const QuadElem& o) const {
    check_same(o);
    return QuadElem(*ctx_, x_ + o.x_, y_ + o.y_);
}

QuadElem QuadElem::operator-(const QuadElem& o) const {
    check_same(o);
    return QuadElem(*ctx_, x_ - o.x_, y_ - o.y_);
}

QuadElem QuadElem::operator*(const QuadElem& o) const {
    check_same(o);
    // (x1 + y1 w)(x2 + y2 w) = x1x2 + (x1y2 + x2y1) w + y1y2 (t w + n0)
    Rat t(ctx_->omega_trace()), n0(ctx_->omega_sq_const());
    return QuadElem(*ctx_, x_ * o.x_ + n0 * y_ * o.y_,
                    x_ * o.y_ + y_ * o.x_ + t * y_ * o.y_);
}

QuadElem QuadElem::operator/(const QuadElem& o) const {
    check_same(o);
    return *this * o.inv();
}

QuadElem QuadElem::operator/(const Rat& r) const {
    if (r == 0) throw DivisionByZero();
    return QuadElem(*ctx_, x_ / r, y_ / r);
}

QuadElem QuadElem::pow(long e) const {
    QuadElem base = *this;
    if (e < 0) {
        base = base.inv();
        e = -e;
    }
    QuadElem acc(*ctx_, 1, 0);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::ostream& operator<<(std::ostream& os, const QuadElem& z) {
    os << z.x();
    if (z.y() != 0) os << " + " << z.y() << "*w";
    return os;
}

} // namespace eis
