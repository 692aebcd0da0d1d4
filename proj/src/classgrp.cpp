#include "eis/classgrp.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace eis {

namespace mp = boost::multiprecision;

std::ostream& operator<<(std::ostream& os, const QuadForm& f) {
    return os << "(" << f.A << "," << f.B << "," << f.C << ")";
}

bool is_reduced(const QuadForm& f) {
    Int aB = mp::abs(f.B);
    if (!(aB <= f.A && f.A <= f.C)) return false;
    if ((aB == f.A || f.A == f.C) && f.B < 0) return false;
    return true;
}

QuadForm reduce_form(QuadForm f) {
    for (;;) {
        // normalize B into (-A, A]
        Int r = f.B % (2 * f.A);
        if (r > f.A) r -= 2 * f.A;
        if (r <= -f.A) r += 2 * f.A;
        if (r != f.B) {
            Int d = f.disc();
            f.B = r;
            f.C = (f.B * f.B - d) / (4 * f.A);
        }
        if (f.A > f.C) {
            f = {f.C, -f.B, f.A};
            continue;
        }
        if (f.A == f.C && f.B < 0) f.B = -f.B;
        return f;
    }
}

AbelianStructure abelian_structure(long n, long identity,
                                   const std::function<long(long, long)>& compose) {
    AbelianStructure st;
    st.order = n;
    auto power = [&](long x, long e) {
        long acc = identity, base = x;
        while (e > 0) {
            if (e & 1) acc = compose(acc, base);
            base = compose(base, base);
            e >>= 1;
        }
        return acc;
    };
    std::map<long, std::vector<long>> span;  // element -> dlog over basis
    span[identity] = {};
    while ((long)span.size() < n) {
        // maximal order in the quotient by the current span
        long best = -1, bestq = 1;
        for (long x = 0; x < n; ++x) {
            if (span.count(x)) continue;
            long q = 1, y = x;
            while (!span.count(y)) {
                y = compose(y, x);
                ++q;
            }
            if (q > bestq) {
                bestq = q;
                best = x;
            }
        }
        // generator of a direct complement component: order bestq, and no
        // smaller power falls into the current span
        long gen = -1;
        for (long z = 0; z < n && gen < 0; ++z) {
            if (span.count(z)) continue;
            long y = z;
            bool ok = true;
            for (long q = 1; q < bestq; ++q) {
                if (span.count(y)) {
                    ok = false;
                    break;
                }
                y = compose(y, z);
            }
            if (ok && y != identity) ok = false;  // y = z^bestq here
            if (ok) gen = z;
        }
        if (gen < 0) throw Error("abelian_structure: no complement generator found");
        std::map<long, std::vector<long>> next;
        long p = identity;
        for (long e = 0; e < bestq; ++e) {
            for (auto& [s, dl] : span) {
                std::vector<long> v = dl;
                v.push_back(e);
                next[compose(s, p)] = v;
            }
            p = compose(p, gen);
        }
        span = std::move(next);
        st.gens.push_back(gen);
        st.divisors.push_back(bestq);
    }
    st.dlogs.assign(n, {});
    for (auto& [x, dl] : span) st.dlogs[x] = dl;
    // identity handling for trivial group
    if (st.gens.empty()) {
        for (long x = 0; x < n; ++x) st.dlogs[x] = {};
    }
    return st;
}

// ---------------- ClassGroup ----------------

ClassGroup::ClassGroup(const FieldCtx& ctx) : ctx_(&ctx) {
    Int d = ctx.disc();
    Int amax = 1;
    while (3 * (amax + 1) * (amax + 1) <= -d) ++amax;
    for (Int A = 1; A <= amax; ++A) {
        for (Int B = -A + 1; B <= A; ++B) {
            Int num = B * B - d;
            if (num % (4 * A) != 0) continue;
            Int C = num / (4 * A);
            if (C < A) continue;
            if (A == C && B < 0) continue;
            if (mp::gcd(mp::gcd(A, B), C) != 1) continue;
            elements_.push_back({A, B, C});
        }
    }
    std::sort(elements_.begin(), elements_.end());
    Int bpr = ((d % 2) + 2) % 2;
    QuadForm pr{1, bpr, (bpr * bpr - d) / 4};
    id_ = index_of(reduce_form(pr));

    long n = h();
    table_.assign(n, std::vector<long>(n, 0));
    for (long i = 0; i < n; ++i)
        for (long j = i; j < n; ++j) {
            FracIdeal I = form_to_ideal(elements_[i]).mul(form_to_ideal(elements_[j]));
            long k = index_of(ideal_to_form(I));
            table_[i][j] = table_[j][i] = k;
        }
    st_ = abelian_structure(n, id_, [this](long i, long j) { return table_[i][j]; });
    square_.assign(n, 0);
    for (long i = 0; i < n; ++i) square_[table_[i][i]] = 1;
}

long ClassGroup::index_of(const QuadForm& f) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), f);
    if (it == elements_.end() || !(*it == f))
        throw Error("ClassGroup: form not in element list");
    return (long)(it - elements_.begin());
}

long ClassGroup::inverse(long i) const {
    for (long j = 0; j < h(); ++j)
        if (table_[i][j] == id_) return j;
    throw Error("ClassGroup: no inverse");
}

long ClassGroup::power(long i, long e) const {
    long m = h();
    long ee = ((e % m) + m) % m;  // class^h = principal
    long acc = id_;
    for (long k = 0; k < ee; ++k) acc = table_[acc][i];
    return acc;
}

bool ClassGroup::is_square(long i) const { return square_[i] != 0; }

FracIdeal ClassGroup::form_to_ideal(const QuadForm& f) const {
    // (A, (-B + sqrt(d))/2) = (A, b' + omega) with b' = (-B - t)/2
    Int t = ctx_->omega_trace();
    Int bp = (-f.B - t) / 2;
    Int bm = bp % f.A;
    if (bm < 0) bm += f.A;
    return FracIdeal::from_hnf(*ctx_, 1, f.A, bm, 1);
}

QuadForm ClassGroup::ideal_to_form(const FracIdeal& I) const {
    Int t = ctx_->omega_trace();
    // primitive integral model: divide by content c and the denominator
    Int A = I.a() / I.c();
    Int bq = I.b() / I.c();
    Int B = -(2 * bq + t);
    Int d = ctx_->disc();
    Int r = B % (2 * A);
    if (r > A) r -= 2 * A;
    if (r <= -A) r += 2 * A;
    B = r;
    QuadForm f{A, B, (B * B - d) / (4 * A)};
    return reduce_form(f);
}

long ClassGroup::class_index(const FracIdeal& I) const {
    return index_of(ideal_to_form(I));
}

FracIdeal ClassGroup::class_rep_ideal(long i) const {
    return form_to_ideal(elements_[i]);
}

// ---------------- RayClassGroup ----------------

RayClassGroup::RayClassGroup(const ClassGroup& cl, const FracIdeal& modulus)
    : cl_(&cl), m_(modulus) {
    if (!m_.is_integral()) throw ZeroModulus("ray class modulus must be integral");
    const FieldCtx& ctx = cl.ctx();
    long h = cl.h();

    // coprime-to-m ideal representative per class
    class_rep_.assign(h, FracIdeal::ring_of_integers(ctx));
    std::vector<char> have(h, 0);
    have[cl.principal_index()] = 1;
    long found = 1;
    for (Int bound = 20; found < h; bound *= 2) {
        for (const PrimeIdeal& P : primes_up_to(ctx, bound)) {
            if (!P.ideal.coprime_to(m_)) continue;
            long k = cl.class_index(P.ideal);
            if (!have[k]) {
                have[k] = 1;
                class_rep_[k] = P.ideal;
                ++found;
            }
        }
        if (bound > 100000) throw Error("RayClassGroup: no coprime class representatives");
    }

    // canonical representatives of (O/m)^* modulo the image of O^*
    auto key = [](const QuadElem& z) {
        return std::pair<Int, Int>(Int(mp::numerator(z.x())), Int(mp::numerator(z.y())));
    };
    if (m_.is_ring()) {
        unit_reps_.push_back(QuadElem(ctx, 1, 0));
    } else {
        std::vector<QuadElem> unit_res;
        for (const QuadElem& u : ctx.units()) unit_res.push_back(mod_reduce(u, m_));
        std::set<std::pair<Int, Int>> seen;
        for (Int x = 0; x < m_.a(); ++x)
            for (Int y = 0; y < m_.c(); ++y) {
                QuadElem z(ctx, Rat(x), Rat(y));
                if (z.is_zero() || seen.count(key(z))) continue;
                if (!mod_invert(z, m_)) continue;
                // orbit under global units
                std::vector<QuadElem> orbit;
                for (const QuadElem& u : unit_res) orbit.push_back(mod_reduce(z * u, m_));
                QuadElem canon = orbit[0];
                for (const QuadElem& o : orbit)
                    if (key(o) < key(canon)) canon = o;
                long idx = (long)unit_reps_.size();
                bool fresh = true;
                auto it = unit_lookup_.find(key(canon));
                if (it != unit_lookup_.end()) {
                    idx = it->second;
                    fresh = false;
                }
                if (fresh) unit_reps_.push_back(canon);
                for (const QuadElem& o : orbit) {
                    unit_lookup_[key(o)] = idx;
                    seen.insert(key(o));
                }
            }
    }
    long nu = (long)unit_reps_.size();
    if (m_.is_ring()) unit_lookup_[key(QuadElem(ctx, 1, 0))] = 0;

    long n = h * nu;
    order_ = n;
    elems_.reserve(n);
    for (long k = 0; k < h; ++k)
        for (long u = 0; u < nu; ++u) {
            elem_lookup_[{k, u}] = (long)elems_.size();
            elems_.push_back({k, u});
        }

    // cocycle: class_rep[k1]*class_rep[k2] = class_rep[k1*k2] * (gamma)
    std::vector<std::vector<QuadElem>> cocycle(h, std::vector<QuadElem>(h));
    for (long k1 = 0; k1 < h; ++k1)
        for (long k2 = 0; k2 < h; ++k2) {
            long k3 = cl.compose(k1, k2);
            FracIdeal K = class_rep_[k1].mul(class_rep_[k2]).mul(class_rep_[k3].inv());
            auto g = K.principal_generator();
            if (!g) throw Error("RayClassGroup: cocycle not principal");
            cocycle[k1][k2] = m_.is_ring() ? QuadElem(ctx, 1, 0) : mod_reduce_fraction(*g, m_);
        }

    auto compose = [&](long i, long j) {
        const Elem &e1 = elems_[i], &e2 = elems_[j];
        long k3 = cl.compose(e1.cls, e2.cls);
        if (m_.is_ring()) return elem_lookup_.at({k3, 0L});
        QuadElem r = mod_reduce(unit_reps_[e1.unit] * unit_reps_[e2.unit], m_);
        r = mod_reduce(r * cocycle[e1.cls][e2.cls], m_);
        long u3 = unit_lookup_.at(key(r));
        return elem_lookup_.at({k3, u3});
    };
    long identity = elem_lookup_.at({cl.principal_index(), unit_coset_of(QuadElem(ctx, 1, 0))});
    st_ = abelian_structure(n, identity, compose);

    for (long g : st_.gens) {
        const Elem& e = elems_[g];
        FracIdeal G = class_rep_[e.cls];
        if (!m_.is_ring()) {
            QuadElem lift = unit_reps_[e.unit];
            G = G.mul(FracIdeal::principal(lift));
        }
        gen_ideals_.push_back(G);
        if (elem_index(G) != g) throw Error("RayClassGroup: generator ideal mismatch");
    }
}

long RayClassGroup::unit_coset_of(const QuadElem& residue) const {
    if (m_.is_ring()) return 0;
    auto k = std::pair<Int, Int>(Int(mp::numerator(residue.x())), Int(mp::numerator(residue.y())));
    auto it = unit_lookup_.find(k);
    if (it == unit_lookup_.end()) throw NotCoprime("residue not invertible mod modulus");
    return it->second;
}

bool RayClassGroup::is_coprime(const FracIdeal& I) const {
    if (m_.is_ring()) return true;
    if (!I.is_integral()) {
        for (auto& [P, v] : factor_ideal(I))
            if (v != 0 && !P.ideal.coprime_to(m_)) return false;
        return true;
    }
    return I.coprime_to(m_);
}

long RayClassGroup::elem_index(const FracIdeal& I) const {
    if (!is_coprime(I)) throw NotCoprime("ideal shares support with the ray modulus");
    long k = cl_->class_index(I);
    FracIdeal J = I.mul(class_rep_[k].inv());
    auto g = J.principal_generator();
    if (!g) throw Error("RayClassGroup: class reduction not principal");
    long u = 0;
    if (!m_.is_ring()) u = unit_coset_of(mod_reduce_fraction(*g, m_));
    return elem_lookup_.at({k, u});
}

std::vector<long> RayClassGroup::dlog(const FracIdeal& I) const {
    return st_.dlogs[elem_index(I)];
}

QuadElem RayClassGroup::ray_witness(const FracIdeal& I, const std::vector<long>& e) const {
    const FieldCtx& ctx = cl_->ctx();
    FracIdeal K = I;
    for (size_t i = 0; i < gen_ideals_.size(); ++i)
        if (e[i] != 0) K = K.mul(gen_ideals_[i].pow(-e[i]));
    auto g = K.principal_generator();
    if (!g) throw Error("RayClassGroup: witness ideal not principal");
    if (m_.is_ring()) return *g;
    for (const QuadElem& u : ctx.units()) {
        QuadElem cand = *g * u;
        if (mod_equal(mod_reduce_fraction(cand, m_), QuadElem(ctx, 1, 0), m_)) return cand;
    }
    throw Error("RayClassGroup: no unit normalizes the witness");
}

std::pair<std::vector<long>, QuadElem> RayClassGroup::decompose(const FracIdeal& I) const {
    std::vector<long> e = dlog(I);
    return {e, ray_witness(I, e)};
}

} // namespace eis
