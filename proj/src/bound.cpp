#include "eis/bound.hpp"

#include <sstream>

namespace eis {

namespace {

std::string ideal_str(const FracIdeal& I) {
    std::ostringstream os;
    os << I;
    return os.str();
}

std::vector<Int> rational_prime_divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> out;
    for (Int f = 2; f * f <= n; ++f)
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

HypothesisReport check_hypotheses(const ClassGroup& cl, const Int& p,
                                  const HeckeChar& chi, const PrimeIdeal& q) {
    const FieldCtx& F = cl.ctx();
    HypothesisReport rep;
    rep.d = F.disc();
    rep.p = p;
    rep.level_m1 = q.ideal;
    auto add = [&](const std::string& name, bool pass, bool required,
                   const std::string& evidence) {
        rep.checks.push_back({name, pass, required, evidence});
    };

    add("p_greater_3", p > 3, true, "p = " + p.str());

    bool unram = F.disc() % p != 0;
    add("p_unramified", unram, true, "d = " + F.disc().str());
    if (unram) {
        PrimeIdeal above = factor_prime(F, p)[0].first;
        rep.p_splits = above.split_type == SplitType::split;
        rep.conditional_on_crystallinity = !rep.p_splits;
        add("p_split_or_inert", true, false, rep.p_splits ? "split" : "inert");
    }

    add("p_coprime_class_number", Int(cl.h()) % p != 0, true,
        "h = " + std::to_string(cl.h()));

    {
        bool ok = true;
        std::ostringstream ev;
        for (const Int& ell : rational_prime_divisors(F.disc())) {
            Int r = ell % p;
            bool this_ok = r != 1 && r != p - 1;
            ok = ok && this_ok;
            ev << ell << " = " << r << " mod p; ";
        }
        add("disc_primes_not_pm1", ok, true, ev.str());
    }

    add("chi_unramified_type_2_0",
        chi.unramified() && chi.type_a() == 2 && chi.type_b() == 0, true,
        "type (" + std::to_string(chi.type_a()) + "," + std::to_string(chi.type_b()) +
            "), modulus " + ideal_str(chi.modulus()));

    // unit part of the level condition: 1 is the only unit congruent to 1
    {
        QuadElem one(F, 1, 0);
        bool ok = !q.ideal.is_ring();
        for (const QuadElem& u : F.units())
            if (ok && !(u == one) && mod_equal(u, one, q.ideal)) ok = false;
        add("only_trivial_unit_at_level", ok, true,
            std::to_string(F.unit_count()) + " units, level " + ideal_str(q.ideal));
    }

    // tame Frobenius condition at every place dividing the auxiliary level
    {
        bool ok = true;
        std::ostringstream ev;
        for (const auto& [v, m] : factor_ideal(q.ideal)) {
            bool this_ok = frob_tame_check(chi, p, v);
            ok = ok && this_ok;
            ev << "v above " << v.ell << ": " << (this_ok ? "pass" : "fail") << "; ";
        }
        rep.sigma_removal = ok;
        add("tame_frobenius_at_level", ok, true, ev.str());
    }

    {
        FracIdeal mm1 = chi.modulus().mul(q.ideal);
        Int order = RayClassGroup(cl, mm1).order();
        add("p_coprime_ray_class_number", order % p != 0, true,
            "#Cl_" + ideal_str(mm1) + " = " + order.str());
    }

    // the factorization chi = phi1/phi2 must exist at the chosen prime
    {
        bool ok = true;
        std::string ev = "conductor " + ideal_str(q.ideal);
        try {
            phi_factor(chi, q, p);
        } catch (const Error& e) {
            ok = false;
            ev = e.what();
        }
        add("phi_pair_exists", ok, true, ev);
    }

    rep.all_pass = true;
    for (const HypothesisCheck& c : rep.checks)
        if (c.required && !c.pass) rep.all_pass = false;
    return rep;
}

SelmerBoundReport selmer_report(const HypothesisReport& hyp, const LValueReport& lrep) {
    if (!hyp.all_pass) throw HypothesesFailed();
    if (!lrep.val_p.has_value() || !lrep.L_alg_rational.has_value())
        throw NoValuation();

    SelmerBoundReport rep;
    rep.hypotheses = hyp;
    rep.l_value = lrep;
    rep.residue_degree = hyp.p_splits ? 1 : 2;
    rep.val_p_l_int = *lrep.val_p > 0 ? *lrep.val_p : 0;
    rep.selmer_valuation_lower_bound = rep.residue_degree * rep.val_p_l_int;
    rep.selmer_unsuperscripted = hyp.sigma_removal;

    std::string sel = rep.selmer_unsuperscripted
                          ? "val_p(#Sel(F, chi_p eps))"
                          : "val_p(#Sel^{Sigma_phi \\ Sigma_rho}(F, chi_p eps))";
    rep.inequality_chain = {
        sel + " >= val_p(#T/I_phi)",
        "val_p(#T/I_phi) >= val_p(#R/(L_int(0,chi)))",
        "val_p(#R/(L_int(0,chi))) = " + std::to_string(rep.selmer_valuation_lower_bound),
    };
    if (hyp.conditional_on_crystallinity)
        rep.conditional_on.push_back(
            "crystallinity of the associated Galois representation at inert p");
    return rep;
}

} // namespace eis
