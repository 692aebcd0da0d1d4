#pragma once

#include "eis/characters.hpp"
#include "eis/cusps.hpp"
#include "eis/mat2.hpp"

namespace eis {

// g = u1 * t * w0 * u2 (big cell, c != 0) or g = u1 * t (small cell, c = 0),
// with u_i upper unipotent and t diagonal; always recomposes exactly.
struct BruhatFactors {
    bool big_cell;
    Mat2F u1, t, w, u2;

    Mat2F recompose() const {
        Mat2F r = u1.mul(t);
        if (big_cell) r = r.mul(w).mul(u2);
        return r;
    }
};
BruhatFactors bruhat_decompose(const Mat2F& g);

// g = b * k with b upper triangular over F and k integral at v with unit
// determinant; built from right column operations.
struct IwasawaFactors {
    Mat2F b, k;
};
IwasawaFactors iwasawa_local(const Mat2F& g, const PrimeIdeal& v);

// Connected-component datum t_i = diag(gamma * a_k * b_m, b_m): a finite
// idele presented as two fractional ideals plus a unit residue at the level.
struct ComponentRep {
    QuadElem gamma_unit;  // unit residue mod the level (1 when level is O)
    FracIdeal a_k;        // O or a representative of a non-square ideal class
    FracIdeal b_m;        // square-class representative
    MaxArithGroup group;  // H((a_k))
};

// Components of the symmetric space for determinant-level structure: count
// equals the ray class number mod `level`; each arithmetic group is H((a_k)).
std::vector<ComponentRep> component_reps(const ClassGroup& cl, const FracIdeal& level);

// Evaluation context for the constant-term function: phi1, phi2 with
// chi = phi1/phi2 unramified; the w0-twisted pair is (phi2 |.|, phi1 |.|^-1).
struct PsiContext {
    HeckeChar phi1, phi2;
    HeckeChar chi;  // phi1/phi2, evaluated directly (unramified)
    FracIdeal level;
};
PsiContext make_psi_context(const HeckeChar& chi, const PrimeIdeal& q, const Int& p = 0);

enum class PsiTwist { id, w0 };

// Exact value of the induced-representation section at eta_f * t_i, computed
// through the global Bruhat cell and per-place negative-valuation factors.
CharValue psi_eval(const PsiContext& ctx, const Mat2F& eta, const ComponentRep& t,
                   PsiTwist twist);

// Finite part of phi * |.|^norm_power at a global field element (all places).
CharValue phi_global(const HeckeChar& phi, int norm_power, const QuadElem& x);

// Constant-term coefficient pair at a cusp: the cocycle is
// x * c_hol + conj(x) * c_antihol with c_antihol = -W(chi) * (L-ratio) * Psi_w0.
struct ConstantTermValue {
    CharValue c_hol;
    CharValue c_antihol;
};
ConstantTermValue constant_term_value(const PsiContext& ctx, const Mat2F& eta,
                                      const ComponentRep& t);

struct ComponentCheck {
    long component;
    bool is_principal_group;  // SL2(O) component (a_k = O)
    long samples;
    bool identity_holds;      // Psi_phi(eta t) = Psi_{w0.phi}(inv-image)
    bool antisymmetry_holds;  // cocycle pair negates-and-swaps under the involution
};
struct ConstantTermReport {
    bool all_hold;
    bool prefactor_is_one;  // W(chi) * L(0, chi-bar)/L(0, chi) = 1
    std::vector<ComponentCheck> components;
};
// Battery over `samples` eta per Bruhat cell per component; throws
// IdentityFails with a trace on the first exact mismatch.
ConstantTermReport constant_term_check(const PsiContext& ctx,
                                       const std::vector<ComponentRep>& comps,
                                       long samples, unsigned seed);

// Eisenstein Hecke data at a good prime v.  The T-eigenvalue is the sum
// phi2(P) + Nm(P) phi1(P); its two exact summands are kept separately (exact
// values are multiplicative objects), with an embedding helper for the sum.
// The pair (v, eigenvalue) is the ideal-generator datum.  S-eigenvalue is
// (phi1 phi2)(P), of central-character magnitude 1.
struct EisHeckeDatum {
    PrimeIdeal v;
    CharValue t_low;   // phi2(P)
    CharValue t_high;  // Nm(P) * phi1(P)
    CharValue s_eigen;

    Complex t_embed(unsigned digits10) const {
        return t_low.embed(digits10) + t_high.embed(digits10);
    }
};
std::vector<EisHeckeDatum> eis_hecke_data(const HeckeChar& phi1, const HeckeChar& phi2,
                                          const std::vector<PrimeIdeal>& primes);

} // namespace eis
