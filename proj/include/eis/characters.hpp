#pragma once

#include <memory>

#include "eis/classgrp.hpp"
#include "eis/numeric.hpp"

namespace eis {

// Named n-th root of a field element: gamma with gamma^n = A, pinned to the
// principal branch under the complex embedding.  Shared between all values
// of one character family; identity is by object identity.
struct CharSymbol {
    long n;
    QuadElem A;
};
using SymbolPtr = std::shared_ptr<const CharSymbol>;

// Exact algebraic number  e^{2 pi i root} * prod_i gamma_i^{m_i} * beta
// with beta in F.  Closed under multiplication and inversion; equality is
// decided exactly (ratios are roots of unity once symbol exponents cancel
// mod their orders, leaving a finite branch determination).
class CharValue {
public:
    CharValue() : beta_() {}
    explicit CharValue(const QuadElem& beta) : beta_(beta) {}
    CharValue(const Rat& root, const QuadElem& beta) : root_(root), beta_(beta) { reduce(); }

    static CharValue one(const FieldCtx& ctx) { return CharValue(QuadElem(ctx, 1, 0)); }
    static CharValue symbol(const SymbolPtr& s, const FieldCtx& ctx);

    const Rat& root() const { return root_; }
    const QuadElem& beta() const { return beta_; }
    const std::vector<std::pair<SymbolPtr, long>>& symbols() const { return syms_; }

    CharValue mul(const CharValue& o) const;
    CharValue inv() const;
    CharValue pow(long e) const;
    CharValue scale(const Rat& r) const;  // multiply by a rational

    bool is_zero() const { return beta_.is_zero(); }
    // Exact equality as complex numbers.
    bool equals(const CharValue& o) const;
    bool is_rational(Rat* out = nullptr) const;  // symbol-free and in Q?

    Complex embed(unsigned digits10) const;

private:
    void reduce();  // canonicalize: symbol exponents into [0,n), root into [0,1)

    Rat root_;  // exponent of e^{2 pi i .}
    std::vector<std::pair<SymbolPtr, long>> syms_;
    QuadElem beta_;
};

// Algebraic Hecke character of infinity type (a,b) and modulus m:
// chi((alpha)) = alpha^{-a} conj(alpha)^{-b} for alpha = 1 mod m, extended to
// ideals coprime to m through a basis of the ray class group; the extension
// is pinned by a root-of-unity twist exponent per basis generator.
class HeckeChar {
public:
    const FieldCtx& ctx() const { return ray_->modulus().ctx(); }
    const FracIdeal& modulus() const { return ray_->modulus(); }
    long type_a() const { return a_; }
    long type_b() const { return b_; }
    const std::vector<long>& twist() const { return twist_; }
    const RayClassGroup& ray() const { return *ray_; }

    CharValue eval(const FracIdeal& I) const;
    // Unitarized value chi(I) * Nm(I)^{(a+b)/2}; requires a+b even.
    CharValue eval_tilde(const FracIdeal& I) const;

    bool is_trivial_twist() const;
    bool unramified() const { return modulus().is_ring(); }

    // Serializable description: (generator order, twist exponent) pairs.
    std::vector<std::pair<long, long>> twist_record() const;

private:
    friend std::vector<HeckeChar> char_build(const ClassGroup&, const FracIdeal&, long, long);
    std::shared_ptr<const RayClassGroup> ray_;
    long a_ = 0, b_ = 0;
    std::vector<long> twist_;              // j_i in [0, n_i)
    std::vector<SymbolPtr> gamma_;         // gamma_i^{n_i} = alpha_i^{-a} conj(alpha_i)^{-b}
    std::vector<QuadElem> alpha_;          // gen_i^{n_i} = (alpha_i), alpha_i = 1 mod m
};

// All characters with the given modulus and infinity type, ordered
// lexicographically by twist exponents; throws NoSuchCharacter when the unit
// obstruction u^a conj(u)^b != 1 (u a unit, u = 1 mod m) blocks existence.
std::vector<HeckeChar> char_build(const ClassGroup& cl, const FracIdeal& modulus,
                                  long a, long b);

struct SymmetryReport {
    bool c_equals_bar;             // lambda(conj a) == conj(lambda(a)) everywhere tested
    bool anticyclotomic_twistable; // the chi^c = chi-bar hypothesis
    long tested;
};
SymmetryReport char_symmetry(const HeckeChar& chi);

// Factor an unramified type (2,0) character as chi = phi1/phi2 with phi1 of
// type (1,0) and conductor q, phi2 = phi1 * chi^{-1} of type (-1,0).
// p != 0 additionally enforces p not dividing q-1.
std::pair<HeckeChar, HeckeChar> phi_factor(const HeckeChar& chi, const PrimeIdeal& q,
                                           const Int& p = 0);

// ---- residues at a prime above p ----

// Residue field of a degree-1 or degree-2 prime above p, with elements
// x + y*wbar written as coordinate pairs mod p.
class ResidueField {
public:
    ResidueField(const FieldCtx& ctx, const Int& p);

    const Int& p() const { return p_; }
    int degree() const { return deg_; }
    Int order() const { return deg_ == 2 ? p_ * p_ : p_; }  // #k

    using Elt = std::array<Int, 2>;
    Elt from_int(const Int& n) const;
    Elt from_elem(const QuadElem& z) const;  // inverts the denominator mod p
    Elt mul(const Elt& u, const Elt& v) const;
    Elt pow(const Elt& u, Int e) const;
    Elt invert(const Elt& u) const;
    bool is_zero(const Elt& u) const { return u[0] == 0 && u[1] == 0; }
    Elt one() const { return {Int(1), Int(0)}; }

    // All m-th roots of unity in k*, m | #k* required (NoValuation otherwise).
    std::vector<Elt> roots_of_unity(long m) const;

private:
    const FieldCtx* ctx_;
    Int p_;
    int deg_;
    Int wred_;    // degree 1: omega = wred mod p
    Int t_, n0_;  // degree 2: omega^2 = t*omega + n0 over F_p
};

// All residues of an exact character value at a prime above p, one per
// consistent choice of branch for the roots of unity and symbols involved.
std::vector<ResidueField::Elt> residue_candidates(const CharValue& v, const ResidueField& k);

// Value of the attached Galois character at arithmetic Frobenius, with its
// reductions at a chosen prime above p (one per branch choice).
struct GaloisFrobValue {
    PrimeIdeal prime;
    CharValue value;
    std::vector<ResidueField::Elt> p_reduction;
};
GaloisFrobValue frob_value(const HeckeChar& chi, const PrimeIdeal& P, const Int& p);

// Lemma-2.2-style tameness: chi(Frob_v) * Nm(v) vs Nm(v) mod a prime above p.
// Self-conjugate v reduces to Nm(v) != +-1 mod p; otherwise the residue of
// chi(P_v) Nm(P_v) is compared with Nm(P_v) over every branch choice.
bool frob_tame_check(const HeckeChar& chi, const Int& p, const PrimeIdeal& v);

} // namespace eis
