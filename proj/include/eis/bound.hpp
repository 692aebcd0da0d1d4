#pragma once

#include <string>
#include <vector>

#include "eis/characters.hpp"
#include "eis/lfun.hpp"

namespace eis {

// One verified condition with a human-readable witness.
struct HypothesisCheck {
    std::string name;
    bool pass;
    bool required;  // required for the unconditional bound
    std::string evidence;
};

struct HypothesisReport {
    Int d;
    Int p;
    bool p_splits = false;  // meaningful only when p is unramified
    FracIdeal level_m1;     // conductor of the chosen phi1
    std::vector<HypothesisCheck> checks;
    bool all_pass = false;                 // every required check
    bool sigma_removal = false;            // tame Frobenius check at all v | M1
    bool conditional_on_crystallinity = false;  // inert p
};

// Verify the full hypothesis chain for the unramified-character Selmer bound:
// p > 3 and unramified, class number and discriminant-prime conditions, chi
// unramified of infinity type (2,0), the unit and tame-Frobenius conditions
// at the auxiliary level, the ray class number condition, and existence of
// the factorization chi = phi1/phi2 at the chosen auxiliary prime.
HypothesisReport check_hypotheses(const ClassGroup& cl, const Int& p,
                                  const HeckeChar& chi, const PrimeIdeal& q);

struct SelmerBoundReport {
    HypothesisReport hypotheses;
    LValueReport l_value;
    int residue_degree = 1;            // f of the coefficient ring at p
    long val_p_l_int = 0;              // valuation of the truncated value
    long selmer_valuation_lower_bound = 0;  // f * val_p(L_int)
    std::vector<std::string> inequality_chain;
    std::vector<std::string> conditional_on;  // empty = unconditional
    bool selmer_unsuperscripted = true;  // tame checks allow dropping Sigma
};

// Assemble the final lower bound val_p(#Sel) >= val_p(#R / L_int) from a
// passing hypothesis report and a reconstructed L-value.
SelmerBoundReport selmer_report(const HypothesisReport& hyp, const LValueReport& lrep);

} // namespace eis
