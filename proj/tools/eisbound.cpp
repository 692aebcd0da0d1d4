#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "eis/bound.hpp"
#include "eis/cusps.hpp"
#include "eis/eisenstein.hpp"
#include "eis/lfun.hpp"

using namespace eis;
using Json = nlohmann::ordered_json;

namespace {

std::string str_of(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string str_of(const Real& x) {
    std::ostringstream os;
    os << std::setprecision(30) << x;
    return os.str();
}

template <typename T>
std::string stream_str(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Json json_complex(const Complex& z) {
    return Json{{"re", str_of(z.re)}, {"im", str_of(z.im)}};
}

Json json_charvalue(const CharValue& v) {
    Json j;
    j["root_of_unity_exponent"] = str_of(v.root());
    j["beta"] = stream_str(v.beta());
    Json syms = Json::array();
    for (const auto& [s, e] : v.symbols())
        syms.push_back(Json{{"order", s->n}, {"radicand", stream_str(s->A)}, {"exponent", e}});
    j["symbols"] = syms;
    j["embedding"] = json_complex(v.embed(30));
    return j;
}

Json json_lreport(const LValueReport& r) {
    Json j;
    j["L0"] = json_complex(r.L0);
    j["omega"] = str_of(r.Omega);
    j["L_alg"] = json_complex(r.L_alg_float);
    j["L_alg_rational"] =
        r.L_alg_rational ? Json(str_of(*r.L_alg_rational)) : Json(nullptr);
    j["L_int"] = str_of(r.L_int);
    j["val_p"] = r.val_p ? Json(*r.val_p) : Json(nullptr);
    j["residual"] = str_of(r.residual);
    j["reconstruction_error"] = str_of(r.reconstruction_error);
    j["truncation"] = r.truncation;
    return j;
}

Json json_hypotheses(const HypothesisReport& h) {
    Json j;
    j["discriminant"] = h.d.str();
    j["p"] = h.p.str();
    j["p_splits"] = h.p_splits;
    j["level"] = stream_str(h.level_m1);
    Json checks = Json::array();
    for (const HypothesisCheck& c : h.checks)
        checks.push_back(Json{{"name", c.name},
                              {"pass", c.pass},
                              {"required", c.required},
                              {"evidence", c.evidence}});
    j["checks"] = checks;
    j["all_pass"] = h.all_pass;
    j["sigma_removal"] = h.sigma_removal;
    j["conditional_on_crystallinity"] = h.conditional_on_crystallinity;
    return j;
}

Json json_char(const HeckeChar& chi) {
    Json j;
    j["modulus"] = stream_str(chi.modulus());
    j["inf_type"] = Json::array({chi.type_a(), chi.type_b()});
    Json tw = Json::array();
    for (const auto& [n, e] : chi.twist_record())
        tw.push_back(Json{{"order", n}, {"exponent", e}});
    j["twist"] = tw;
    return j;
}

struct Options {
    long d = -67;
    long p = 19;
    long aux = 17;
    std::string curve_spec;
    unsigned precision = 50;
    bool pretty = false;
    std::string out;
    long samples = 10;
    long prime_bound = 30;
    long type_a = 2, type_b = 0;
};

Curve parse_curve(const std::string& spec) {
    std::vector<Int> c;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) c.emplace_back(item);
    if (c.size() != 5)
        throw Error("--curve expects 5 comma-separated integers a1,a2,a3,a4,a6");
    return Curve{c[0], c[1], c[2], c[3], c[4]};
}

// The unique character setup used by the bound pipeline: unramified of type
// (2,0), with phi-pair at the first prime above the auxiliary rational prime.
struct Setup {
    FieldCtx F;
    ClassGroup cl;
    HeckeChar chi;
    PrimeIdeal q;
    Setup(long d, long aux)
        : F(Int(d)),
          cl(F),
          chi(char_build(cl, FracIdeal::ring_of_integers(F), 2, 0).at(0)),
          q(factor_prime(F, Int(aux))[0].first) {}
};

Json run_classgroup(const Options& o) {
    FieldCtx F((Int(o.d)));
    ClassGroup cl(F);
    Json j;
    j["discriminant"] = o.d;
    j["class_number"] = cl.h();
    j["structure"] = cl.structure().divisors;
    Json forms = Json::array();
    for (const QuadForm& f : cl.elements()) forms.push_back(stream_str(f));
    j["forms"] = forms;
    return j;
}

Json run_cusps(const Options& o) {
    FieldCtx F((Int(o.d)));
    ClassGroup cl(F);
    Json j;
    j["discriminant"] = o.d;
    Json per_class = Json::array();
    for (long i = 0; i < cl.h(); ++i) {
        FracIdeal b = cl.class_rep_ideal(i);
        auto cusps = cusp_reps(b, cl);
        Json jb;
        jb["b"] = stream_str(b);
        jb["b_class_is_square"] = cl.is_square(i);
        Json list = Json::array();
        for (const CuspClass& c : cusps)
            list.push_back(Json{{"z1", stream_str(c.z1)},
                                {"z2", stream_str(c.z2)},
                                {"ideal_class", c.ideal_class}});
        jb["cusps"] = list;
        auto pairs = involution_pairs(cusps, b, cl, /*allow_fixed=*/true);
        Json jp = Json::array();
        for (const auto& [x, y] : pairs) jp.push_back(Json::array({x, y}));
        jb["involution_pairs"] = jp;
        per_class.push_back(jb);
    }
    j["per_class"] = per_class;
    return j;
}

Json run_chars(const Options& o) {
    FieldCtx F((Int(o.d)));
    ClassGroup cl(F);
    auto chars = char_build(cl, FracIdeal::ring_of_integers(F), o.type_a, o.type_b);
    Json j;
    j["discriminant"] = o.d;
    j["inf_type"] = Json::array({o.type_a, o.type_b});
    Json list = Json::array();
    for (const HeckeChar& chi : chars) {
        Json jc = json_char(chi);
        SymmetryReport sym = char_symmetry(chi);
        jc["conjugation_symmetric"] = sym.anticyclotomic_twistable;
        list.push_back(jc);
    }
    j["characters"] = list;
    return j;
}

Json run_lvalue(const Options& o) {
    Setup s(o.d, o.aux);
    Json j;
    j["discriminant"] = o.d;
    j["p"] = o.p;
    j["character"] = json_char(s.chi);
    if (!o.curve_spec.empty()) {
        Curve E = parse_curve(o.curve_spec);
        LValueReport r = l_alg_report(s.chi, Int(o.p), E, o.precision);
        j["report"] = json_lreport(r);
    } else {
        LSeries series = build_lseries(s.chi, o.precision);
        LEvalResult r = l_eval(series, Complex(Real(0)), o.precision);
        j["L0"] = json_complex(r.value);
        j["W"] = json_complex(series.w_known
                                  ? series.W
                                  : root_number(s.chi, RootNumberMode::formula, o.precision));
        j["residual"] = str_of(r.residual);
        j["truncation"] = r.truncation;
    }
    return j;
}

Json run_eis(const Options& o) {
    Setup s(o.d, o.aux);
    PsiContext ctx = make_psi_context(s.chi, s.q, Int(o.p));
    auto comps = component_reps(s.cl, ctx.level);
    Json j;
    j["discriminant"] = o.d;
    j["aux_prime"] = o.aux;
    j["components"] = Json::array();
    for (const ComponentRep& c : comps)
        j["components"].push_back(Json{{"gamma", stream_str(c.gamma_unit)},
                                       {"a_k", stream_str(c.a_k)},
                                       {"b_m", stream_str(c.b_m)}});
    ConstantTermReport rep = constant_term_check(ctx, comps, o.samples, 1);
    Json jr;
    jr["all_hold"] = rep.all_hold;
    jr["prefactor_is_one"] = rep.prefactor_is_one;
    Json jc = Json::array();
    for (const ComponentCheck& c : rep.components)
        jc.push_back(Json{{"component", c.component},
                          {"principal", c.is_principal_group},
                          {"samples", c.samples},
                          {"identity", c.identity_holds},
                          {"antisymmetry", c.antisymmetry_holds}});
    jr["components"] = jc;
    j["constant_term_check"] = jr;

    std::vector<PrimeIdeal> good;
    for (const PrimeIdeal& P : primes_up_to(s.F, Int(o.prime_bound)))
        if (P.ideal.coprime_to(ctx.phi1.modulus())) good.push_back(P);
    Json gens = Json::array();
    for (const EisHeckeDatum& h : eis_hecke_data(ctx.phi1, ctx.phi2, good)) {
        Json g;
        g["v"] = stream_str(h.v.ideal);
        g["norm"] = h.v.norm().str();
        g["t_terms"] = Json::array({json_charvalue(h.t_low), json_charvalue(h.t_high)});
        g["t_embedding"] = json_complex(h.t_embed(30));
        g["s_eigenvalue"] = json_charvalue(h.s_eigen);
        gens.push_back(g);
    }
    j["eisenstein_ideal_generators"] = gens;
    return j;
}

Json run_check(const Options& o) {
    Setup s(o.d, o.aux);
    return json_hypotheses(check_hypotheses(s.cl, Int(o.p), s.chi, s.q));
}

Json run_bound(const Options& o, bool* ok) {
    Setup s(o.d, o.aux);
    HypothesisReport hyp = check_hypotheses(s.cl, Int(o.p), s.chi, s.q);
    Curve E = parse_curve(o.curve_spec);
    LValueReport lrep = l_alg_report(s.chi, Int(o.p), E, o.precision);
    SelmerBoundReport rep = selmer_report(hyp, lrep);

    Json j;
    j["field"] = Json{{"discriminant", o.d}, {"class_number", s.cl.h()}};
    j["prime"] = o.p;
    j["character"] = json_char(s.chi);
    j["hypotheses"] = json_hypotheses(rep.hypotheses);
    j["l_value"] = json_lreport(rep.l_value);
    j["bound"] = Json{{"selmer_valuation_lower_bound", rep.selmer_valuation_lower_bound},
                      {"residue_degree", rep.residue_degree},
                      {"inequality_chain", rep.inequality_chain},
                      {"selmer_unsuperscripted", rep.selmer_unsuperscripted},
                      {"conditional_on", rep.conditional_on}};
    if (ok) *ok = rep.hypotheses.all_pass;
    return j;
}

Json run_example67(Options o, bool* ok) {
    o.d = -67;
    o.p = 19;
    o.aux = 17;
    if (o.curve_spec.empty()) o.curve_spec = "0,0,1,-7370,243528";
    bool hyp_ok = false;
    Json j = run_bound(o, &hyp_ok);

    // the identity battery over all components, as part of the pipeline
    Setup s(o.d, o.aux);
    PsiContext ctx = make_psi_context(s.chi, s.q, Int(o.p));
    auto comps = component_reps(s.cl, ctx.level);
    ConstantTermReport rep = constant_term_check(ctx, comps, o.samples, 1);
    j["constant_term_check"] = Json{{"components", (long)rep.components.size()},
                                    {"all_hold", rep.all_hold},
                                    {"prefactor_is_one", rep.prefactor_is_one}};
    long bound = j["bound"]["selmer_valuation_lower_bound"].get<long>();
    if (ok) *ok = hyp_ok && rep.all_hold && bound >= 1;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Selmer lower bounds from Eisenstein congruences for imaginary "
                 "quadratic fields"};
    app.require_subcommand(1);

    Options o;
    if (const char* env = std::getenv("EISBOUND_PRECISION")) o.precision = std::atoi(env);

    auto add_common = [&](CLI::App* c) {
        c->add_option("-d,--discriminant", o.d, "fundamental discriminant (< 0)");
        c->add_option("-p,--prime", o.p, "rational prime p");
        c->add_option("--aux-prime", o.aux, "auxiliary rational prime (phi1 conductor)");
        c->add_option("--curve", o.curve_spec, "Weierstrass coefficients a1,a2,a3,a4,a6");
        c->add_option("--precision", o.precision, "working precision in decimal digits");
        c->add_option("--samples", o.samples, "eta samples per Bruhat cell per component");
        c->add_option("--primes", o.prime_bound, "norm bound for Hecke data primes");
        c->add_option("--type-a", o.type_a, "infinity type exponent a");
        c->add_option("--type-b", o.type_b, "infinity type exponent b");
        c->add_flag("--pretty", o.pretty, "indented output");
        c->add_option("--out", o.out, "write output to file");
    };
    CLI::App* c_classgroup = app.add_subcommand("classgroup", "class group data");
    CLI::App* c_cusps = app.add_subcommand("cusps", "cusp classes and involution pairing");
    CLI::App* c_chars = app.add_subcommand("chars", "algebraic Hecke characters");
    CLI::App* c_lvalue = app.add_subcommand("lvalue", "special L-value report");
    CLI::App* c_eis = app.add_subcommand("eis", "constant-term checks and Hecke data");
    CLI::App* c_check = app.add_subcommand("check", "hypothesis verification");
    CLI::App* c_bound = app.add_subcommand("bound", "Selmer lower-bound report");
    CLI::App* c_example = app.add_subcommand("example67", "full worked example pipeline");
    for (CLI::App* c : {c_classgroup, c_cusps, c_chars, c_lvalue, c_eis, c_check,
                        c_bound, c_example})
        add_common(c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    Json out;
    bool ok = true;
    try {
        if (app.got_subcommand(c_classgroup)) out = run_classgroup(o);
        else if (app.got_subcommand(c_cusps)) out = run_cusps(o);
        else if (app.got_subcommand(c_chars)) out = run_chars(o);
        else if (app.got_subcommand(c_lvalue)) out = run_lvalue(o);
        else if (app.got_subcommand(c_eis)) out = run_eis(o);
        else if (app.got_subcommand(c_check)) out = run_check(o);
        else if (app.got_subcommand(c_bound)) out = run_bound(o, &ok);
        else if (app.got_subcommand(c_example)) out = run_example67(o, &ok);
    } catch (const Error& e) {
        Json err{{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }

    std::string text = o.pretty ? out.dump(2) : out.dump();
    text += "\n";
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        f << text;
    } else {
        std::cout << text;
    }
    return ok ? 0 : 1;
}
