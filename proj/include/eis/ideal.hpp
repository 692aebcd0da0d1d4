#pragma once

#include <array>
#include <optional>
#include <vector>

#include "eis/field.hpp"

namespace eis {

// Fractional ideal of O in Hermite normal form:
//   I = (1/den) * ( a*Z + (b + c*omega)*Z )
// with a,c,den > 0, c | a, c | b, 0 <= b < a and a*c | Nm(b + c*omega).
class FracIdeal {
public:
    FracIdeal() : ctx_(nullptr) {}

    static FracIdeal from_hnf(const FieldCtx& ctx, const Int& den, const Int& a,
                              const Int& b, const Int& c);
    static FracIdeal ring_of_integers(const FieldCtx& ctx);
    static FracIdeal principal(const QuadElem& z);
    static FracIdeal from_generators(const std::vector<QuadElem>& gens);

    const FieldCtx& ctx() const { return *ctx_; }
    const Int& den() const { return den_; }
    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }

    bool is_integral() const { return den_ == 1; }
    bool is_ring() const { return den_ == 1 && a_ == 1 && c_ == 1; }
    Rat norm() const { return Rat(a_ * c_) / Rat(den_ * den_); }

    // Z-basis { a/den, (b + c*omega)/den }.
    QuadElem basis1() const;
    QuadElem basis2() const;

    FracIdeal mul(const FracIdeal& o) const;
    FracIdeal inv() const;
    FracIdeal conj() const;
    FracIdeal add(const FracIdeal& o) const;        // ideal sum
    FracIdeal intersect(const FracIdeal& o) const;  // lattice intersection
    FracIdeal scale(const Rat& r) const;            // r * I
    FracIdeal pow(long e) const;

    bool contains(const QuadElem& z) const;
    bool contains_lattice(const FracIdeal& o) const;  // o subset of this
    bool coprime_to(const FracIdeal& o) const;        // integral ideals: I + J = O

    // Smallest-norm nonzero elements; exactly the generators when principal.
    std::optional<QuadElem> principal_generator() const;

    bool operator==(const FracIdeal& o) const {
        return den_ == o.den_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
    }
    bool operator!=(const FracIdeal& o) const { return !(*this == o); }
    bool operator<(const FracIdeal& o) const;  // lexicographic, for map keys

private:
    const FieldCtx* ctx_;
    Int den_, a_, b_, c_;
};

std::ostream& operator<<(std::ostream& os, const FracIdeal& I);

enum class SplitType { split, inert, ramified };

struct PrimeIdeal {
    Int ell;
    SplitType split_type;
    FracIdeal ideal;
    int residue_degree;  // f: Nm = ell^f

    Int norm() const {
        return residue_degree == 2 ? Int(ell * ell) : ell;
    }
    PrimeIdeal conj() const;
    bool self_conjugate() const { return split_type != SplitType::split; }
};

// Primes of O above the rational prime ell, with exponents so that the
// product of P^e over the list equals (ell).
std::vector<std::pair<PrimeIdeal, int>> factor_prime(const FieldCtx& ctx, const Int& ell);

// All prime ideals of norm <= bound, ordered by (norm, b of HNF).
std::vector<PrimeIdeal> primes_up_to(const FieldCtx& ctx, const Int& bound);

int ideal_val(const FracIdeal& I, const PrimeIdeal& P);
int elem_val(const QuadElem& z, const PrimeIdeal& P);

// Factor a fractional ideal over the primes dividing its numerator/denominator.
std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const FracIdeal& I);

struct ValConstraint {
    enum Kind { eq, gt, zero } kind;
    PrimeIdeal prime;
    int k = 0;  // target order for eq/gt
};

// Element z with ord_P(z) = k (eq), ord_P(z) = 0 (zero) or ord_P(z) > k (gt)
// for every listed constraint; found by bounded lattice search validated
// with elem_val.
QuadElem crt_construct(const FieldCtx& ctx, const std::vector<ValConstraint>& constraints);

// ---- residue arithmetic mod an integral ideal ----

// Canonical representative of z mod m: x in [0,a), y in [0,c) coordinates.
QuadElem mod_reduce(const QuadElem& z, const FracIdeal& m);
// Inverse of z in O/m; nullopt when z is not a unit mod m.
std::optional<QuadElem> mod_invert(const QuadElem& z, const FracIdeal& m);
bool mod_equal(const QuadElem& u, const QuadElem& v, const FracIdeal& m);
// Residue of a quotient p/q of integral elements whose valuations vanish at
// every prime dividing m (the denominator ideal is re-generated coprime to m).
QuadElem mod_reduce_fraction(const QuadElem& z, const FracIdeal& m);
// #(O/m)^* by direct enumeration (moduli in scope are small).
Int unit_group_order_mod(const FracIdeal& m);

// ---- small integer linear algebra (Z-lattices of rank <= 2) ----

struct IntMat2xN {
    std::vector<std::array<Int, 2>> cols;
};

// Column-style HNF: returns columns spanning the same lattice, shaped as
// (a,0),(b,c) with c|..., plus (optionally) the unimodular transform U with
// input * U = output-padded-with-zero-columns.
IntMat2xN hnf_2xn(const IntMat2xN& m, std::vector<std::vector<Int>>* transform = nullptr);

// Integer solutions x of  cols * x = rhs ; nullopt when unsolvable.
std::optional<std::vector<Int>> solve_integer(const IntMat2xN& m, const std::array<Int, 2>& rhs);

} // namespace eis
