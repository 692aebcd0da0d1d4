#include "eis/characters.hpp"

#include <algorithm>
#include <map>

namespace eis {

namespace mp = boost::multiprecision;

namespace {

QuadElem powq(const QuadElem& z, long e) {
    if (e >= 0) return z.pow(e);
    return z.inv().pow(-e);
}

Rat rat_pow(const Rat& r, long e) {
    Rat out = 1;
    Rat b = e >= 0 ? r : Rat(1) / r;
    for (long k = e >= 0 ? e : -e; k; --k) out *= b;
    return out;
}

Rat frac_mod1(const Rat& q) {
    Int fl = Int(mp::numerator(q)) / Int(mp::denominator(q));
    if (q < 0 && fl * Int(mp::denominator(q)) != Int(mp::numerator(q))) fl -= 1;
    return q - Rat(fl);
}

} // namespace

// ---- CharValue ----

CharValue CharValue::symbol(const SymbolPtr& s, const FieldCtx& ctx) {
    CharValue v(QuadElem(ctx, 1, 0));
    v.syms_.push_back({s, 1});
    v.reduce();
    return v;
}

void CharValue::reduce() {
    root_ = frac_mod1(root_);
    std::map<const CharSymbol*, std::pair<SymbolPtr, long>> acc;
    for (auto& [s, e] : syms_) acc[s.get()].first = s, acc[s.get()].second += e;
    syms_.clear();
    for (auto& [key, se] : acc) {
        auto& [s, e] = se;
        if (s->A == QuadElem(beta_.ctx(), 1, 0)) continue;  // trivial symbol
        long q = e / s->n, r = e % s->n;
        if (r < 0) r += s->n, q -= 1;
        beta_ = beta_ * powq(s->A, q);
        if (r != 0) syms_.push_back({s, r});
    }
}

CharValue CharValue::mul(const CharValue& o) const {
    CharValue v;
    v.root_ = root_ + o.root_;
    v.syms_ = syms_;
    v.syms_.insert(v.syms_.end(), o.syms_.begin(), o.syms_.end());
    v.beta_ = beta_ * o.beta_;
    v.reduce();
    return v;
}

CharValue CharValue::inv() const {
    CharValue v;
    v.root_ = -root_;
    for (auto& [s, e] : syms_) v.syms_.push_back({s, -e});
    v.beta_ = beta_.inv();
    v.reduce();
    return v;
}

CharValue CharValue::pow(long e) const {
    CharValue v;
    v.root_ = root_ * e;
    for (auto& [s, m] : syms_) v.syms_.push_back({s, m * e});
    v.beta_ = powq(beta_, e);
    v.reduce();
    return v;
}

CharValue CharValue::scale(const Rat& r) const {
    CharValue v = *this;
    v.beta_ = v.beta_ * r;
    return v;
}

bool CharValue::is_rational(Rat* out) const {
    if (!syms_.empty()) return false;
    if (root_ == 0) {
        if (!beta_.is_rational()) return false;
        if (out) *out = beta_.x();
        return true;
    }
    if (root_ == Rat(1, 2)) {
        if (!beta_.is_rational()) return false;
        if (out) *out = -beta_.x();
        return true;
    }
    return false;
}

bool CharValue::equals(const CharValue& o) const {
    if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
    CharValue r = mul(o.inv());
    if (r.syms_.empty() && r.root_ == 0)
        return r.beta_ == QuadElem(r.beta_.ctx(), 1, 0);
    // r^N is symbol- and root-free; if it is 1 then r is an N-th root of
    // unity and a coarse numeric check separates the branches.
    long N = (long)Int(mp::denominator(r.root_));
    for (auto& [s, e] : r.syms_) N = (long)mp::lcm(Int(N), Int(s->n));
    CharValue rN = r.pow(N);
    if (!rN.syms_.empty()) return false;
    if (!(rN.root_ == 0 && rN.beta_ == QuadElem(r.beta_.ctx(), 1, 0))) return false;
    ScopedPrecision prec(60);
    Complex z = r.embed(60);
    return (z - Complex(Real(1))).abs() < Real("1e-25");
}

Complex CharValue::embed(unsigned digits10) const {
    ScopedPrecision prec(digits10 + 10);
    Complex z = root_of_unity(root_);
    for (auto& [s, e] : syms_)
        z *= cpow(principal_root(eis::embed(s->A), s->n), e);
    return z * eis::embed(beta_);
}

// ---- HeckeChar ----

std::vector<HeckeChar> char_build(const ClassGroup& cl, const FracIdeal& modulus,
                                  long a, long b) {
    const FieldCtx& F = cl.ctx();
    if (!modulus.is_integral()) throw Error("character modulus must be integral");
    QuadElem one(F, 1, 0);
    for (const QuadElem& u : F.units()) {
        if (!modulus.contains(u - one)) continue;  // only units = 1 mod m obstruct
        if (powq(u, -a) * powq(u.conj(), -b) != one) throw NoSuchCharacter();
    }
    auto ray = std::make_shared<RayClassGroup>(cl, modulus);
    const auto& st = ray->structure();
    size_t r = st.divisors.size();

    std::vector<QuadElem> alpha(r);
    std::vector<SymbolPtr> gamma(r);
    for (size_t i = 0; i < r; ++i) {
        long n = st.divisors[i];
        auto [e, al] = ray->decompose(ray->gen_ideal((long)i).pow(n));
        for (long ej : e)
            if (ej != 0) throw Error("ray basis power is not principal");
        alpha[i] = al;
        gamma[i] = std::make_shared<CharSymbol>(
            CharSymbol{n, powq(al, -a) * powq(al.conj(), -b)});
    }

    std::vector<HeckeChar> out;
    std::vector<long> j(r, 0);
    while (true) {
        HeckeChar chi;
        chi.ray_ = ray;
        chi.a_ = a;
        chi.b_ = b;
        chi.twist_ = j;
        chi.gamma_ = gamma;
        chi.alpha_ = alpha;
        out.push_back(chi);
        size_t k = 0;
        while (k < r && ++j[k] == st.divisors[k]) j[k++] = 0;
        if (k == r) break;
    }
    return out;
}

CharValue HeckeChar::eval(const FracIdeal& I) const {
    if (!ray_->is_coprime(I)) throw NotCoprime();
    auto [e, al] = ray_->decompose(I);
    CharValue v(powq(al, -a_) * powq(al.conj(), -b_));
    Rat root = 0;
    for (size_t i = 0; i < e.size(); ++i) {
        root += Rat(twist_[i] * e[i], gamma_[i]->n);
        v = v.mul(CharValue::symbol(gamma_[i], ctx()).pow(e[i]));
    }
    return CharValue(root, QuadElem(ctx(), 1, 0)).mul(v);
}

CharValue HeckeChar::eval_tilde(const FracIdeal& I) const {
    if ((a_ + b_) % 2 != 0) throw Error("unitarization needs even a+b");
    return eval(I).scale(rat_pow(I.norm(), (a_ + b_) / 2));
}

bool HeckeChar::is_trivial_twist() const {
    return std::all_of(twist_.begin(), twist_.end(), [](long j) { return j == 0; });
}

std::vector<std::pair<long, long>> HeckeChar::twist_record() const {
    std::vector<std::pair<long, long>> rec;
    for (size_t i = 0; i < twist_.size(); ++i)
        rec.push_back({gamma_[i]->n, twist_[i]});
    return rec;
}

SymmetryReport char_symmetry(const HeckeChar& chi) {
    const FieldCtx& F = chi.ctx();
    std::vector<FracIdeal> tests;
    for (const PrimeIdeal& P : primes_up_to(F, 200)) {
        if (!chi.ray().is_coprime(P.ideal) || !chi.ray().is_coprime(P.ideal.conj()))
            continue;
        tests.push_back(P.ideal);
        if (tests.size() >= 20) break;
    }
    for (long i = 0; i < chi.ray().class_group().h(); ++i) {
        FracIdeal C = chi.ray().class_group().class_rep_ideal(i);
        if (chi.ray().is_coprime(C) && chi.ray().is_coprime(C.conj())) tests.push_back(C);
    }
    SymmetryReport rep{true, true, (long)tests.size()};
    long ab = chi.type_a() + chi.type_b();
    for (const FracIdeal& I : tests) {
        // lambda^c = lambda-bar  <=>  lambda(conj I) * lambda(I) = Nm(I)^{-a-b}
        CharValue lhs = chi.eval(I.conj()).mul(chi.eval(I));
        CharValue rhs(F.from_rational(rat_pow(I.norm(), -ab)));
        if (!lhs.equals(rhs)) rep.c_equals_bar = false;
    }
    rep.anticyclotomic_twistable = rep.c_equals_bar;
    return rep;
}

std::pair<HeckeChar, HeckeChar> phi_factor(const HeckeChar& chi, const PrimeIdeal& q,
                                           const Int& p) {
    const FieldCtx& F = chi.ctx();
    if (!chi.unramified() || chi.type_a() != 2 || chi.type_b() != 0)
        throw Error("factorization needs an unramified type (2,0) character");
    if (q.split_type != SplitType::split) throw BadAuxPrime();
    if (q.ell <= F.unit_count()) throw BadAuxPrime();
    if (p != 0 && (q.ell - 1) % p == 0) throw BadAuxPrime();

    const ClassGroup& cl = chi.ray().class_group();
    std::vector<HeckeChar> p1s = char_build(cl, q.ideal, 1, 0);
    const HeckeChar& phi1 = p1s.front();  // trivial-twist branch

    std::vector<HeckeChar> p2s = char_build(cl, q.ideal, -1, 0);
    const auto& st = phi1.ray().structure();
    std::vector<long> jt(st.divisors.size());
    long index = 0, stride = 1;
    for (size_t i = 0; i < st.divisors.size(); ++i) {
        long n = st.divisors[i];
        const FracIdeal& G = phi1.ray().gen_ideal((long)i);
        CharValue target = phi1.eval(G).mul(chi.eval(G).inv());
        CharValue base = p2s.front().eval(G);
        CharValue ratio = target.mul(base.inv());
        long found = -1;
        for (long j = 0; j < n && found < 0; ++j)
            if (ratio.equals(CharValue(Rat(j, n), QuadElem(F, 1, 0)))) found = j;
        if (found < 0) throw Error("quotient character is not in the family");
        jt[i] = found;
        index += found * stride;
        stride *= n;
    }
    const HeckeChar& phi2 = p2s[index];

    int checked = 0;
    for (const PrimeIdeal& P : primes_up_to(F, 300)) {
        if (!phi1.ray().is_coprime(P.ideal) || !chi.ray().is_coprime(P.ideal)) continue;
        CharValue quot = phi1.eval(P.ideal).mul(phi2.eval(P.ideal).inv());
        if (!quot.equals(chi.eval(P.ideal))) throw IdentityFails();
        if (++checked >= 20) break;
    }
    return {phi1, phi2};
}

// ---- residue fields ----

ResidueField::ResidueField(const FieldCtx& ctx, const Int& p) : ctx_(&ctx), p_(p) {
    t_ = ctx.omega_trace() % p;
    n0_ = ctx.omega_sq_const() % p;
    if (t_ < 0) t_ += p;
    if (n0_ < 0) n0_ += p;
    deg_ = 2;
    for (Int r = 0; r < p; ++r)
        if ((r * r - t_ * r - n0_) % p == 0) {
            deg_ = 1;
            wred_ = r;
            break;
        }
}

ResidueField::Elt ResidueField::from_int(const Int& n) const {
    Int v = n % p_;
    if (v < 0) v += p_;
    return {v, Int(0)};
}

ResidueField::Elt ResidueField::from_elem(const QuadElem& z) const {
    auto red = [&](const Rat& r) {
        Int den = Int(mp::denominator(r)) % p_;
        if (den == 0) throw NoValuation();
        Int dinv = 1, e = p_ - 2, b = den;
        for (; e > 0; e >>= 1, b = b * b % p_)
            if (mp::bit_test(e, 0)) dinv = dinv * b % p_;
        Int v = Int(mp::numerator(r)) % p_ * dinv % p_;
        if (v < 0) v += p_;
        return v;
    };
    Int x = red(z.x()), y = red(z.y());
    if (deg_ == 1) return {(x + y * wred_) % p_, Int(0)};
    return {x, y};
}

ResidueField::Elt ResidueField::mul(const Elt& u, const Elt& v) const {
    if (deg_ == 1) return {u[0] * v[0] % p_, Int(0)};
    Int yy = u[1] * v[1] % p_;
    Int a = (u[0] * v[0] + yy * n0_) % p_;
    Int b = (u[0] * v[1] + u[1] * v[0] + yy * t_) % p_;
    return {a, b};
}

ResidueField::Elt ResidueField::pow(const Elt& u, Int e) const {
    Elt r = one(), b = u;
    if (e < 0) e = e % (order() - 1) + (order() - 1);
    for (; e > 0; e >>= 1) {
        if (mp::bit_test(e, 0)) r = mul(r, b);
        b = mul(b, b);
    }
    return r;
}

ResidueField::Elt ResidueField::invert(const Elt& u) const {
    if (is_zero(u)) throw DivisionByZero();
    return pow(u, order() - 2);
}

std::vector<ResidueField::Elt> ResidueField::roots_of_unity(long m) const {
    Int n = order() - 1;
    if (n % m != 0) throw Error("residue field has no such roots of unity");
    // find a generator of k*
    std::vector<Int> primes;
    Int nn = n;
    for (Int q = 2; q * q <= nn; ++q)
        while (nn % q == 0) {
            if (primes.empty() || primes.back() != q) primes.push_back(q);
            nn /= q;
        }
    if (nn > 1) primes.push_back(nn);
    Elt g = one();
    for (Int a = 1; a < p_ && deg_ == 1; ++a) {
        Elt c = {a, Int(0)};
        bool ok = true;
        for (const Int& q : primes)
            if (pow(c, n / q) == one()) { ok = false; break; }
        if (ok) { g = c; break; }
    }
    if (deg_ == 2) {
        bool done = false;
        for (Int a = 0; a < p_ && !done; ++a)
            for (Int b = 1; b < p_ && !done; ++b) {
                Elt c = {a, b};
                bool ok = true;
                for (const Int& q : primes)
                    if (pow(c, n / q) == one()) { ok = false; break; }
                if (ok) { g = c; done = true; }
            }
    }
    Elt z = pow(g, n / m);
    std::vector<Elt> out;
    Elt cur = one();
    for (long j = 0; j < m; ++j) {
        out.push_back(cur);
        cur = mul(cur, z);
    }
    return out;
}

std::vector<ResidueField::Elt> residue_candidates(const CharValue& v, const ResidueField& k) {
    std::vector<ResidueField::Elt> cands = {k.from_elem(v.beta())};
    auto extend = [&](const std::vector<ResidueField::Elt>& choices) {
        std::vector<ResidueField::Elt> next;
        for (const auto& c : cands)
            for (const auto& x : choices) next.push_back(k.mul(c, x));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cands = next;
    };
    if (v.root() != 0) {
        long t = (long)Int(mp::denominator(v.root()));
        // the value is a primitive root of unity of the reduced order
        auto all = k.roots_of_unity(t);
        std::vector<ResidueField::Elt> prim;
        long ord = t / (long)mp::gcd(Int(mp::numerator(v.root())), Int(t));
        for (long j = 0; j < t; ++j) {
            long jo = t / (long)mp::gcd(Int(j), Int(t));
            if (jo == ord) prim.push_back(all[j]);
        }
        extend(prim);
    }
    for (auto& [s, e] : v.symbols()) {
        if (k.p() > 1000) throw Error("residue prime too large for root enumeration");
        ResidueField::Elt A = k.from_elem(s->A);
        std::vector<ResidueField::Elt> choices;  // x^e over all x with x^n = A
        for (Int a0 = 0; a0 < k.p(); ++a0)
            for (Int b0 = 0; b0 < (k.degree() == 2 ? k.p() : Int(1)); ++b0) {
                ResidueField::Elt c = {a0, b0};
                if (k.pow(c, s->n) == A) choices.push_back(k.pow(c, e));
            }
        if (choices.empty()) throw Error("symbol has no residue at this prime");
        extend(choices);
    }
    return cands;
}

GaloisFrobValue frob_value(const HeckeChar& chi, const PrimeIdeal& P, const Int& p) {
    GaloisFrobValue out{P, chi.eval(P.ideal), {}};
    ResidueField k(chi.ctx(), p);
    out.p_reduction = residue_candidates(out.value, k);
    return out;
}

bool frob_tame_check(const HeckeChar& chi, const Int& p, const PrimeIdeal& v) {
    if (v.ell == p) throw Error("v must be prime to p");
    if (!chi.ray().is_coprime(v.ideal)) throw RamifiedAtV();
    if (v.self_conjugate()) {
        Int n = v.norm() % p;
        if (n < 0) n += p;
        return n != 1 && n != p - 1;
    }
    ResidueField k(chi.ctx(), p);
    CharValue val = chi.eval(v.ideal).scale(Rat(v.norm()));
    ResidueField::Elt target = k.from_int(v.norm());
    for (const auto& c : residue_candidates(val, k))
        if (c == target) return false;
    return true;
}

} // namespace eis
