#include "eis/ideal.hpp"

#include <algorithm>
#include <boost/multiprecision/miller_rabin.hpp>
#include <map>
#include <ostream>

namespace eis {

namespace mp = boost::multiprecision;

namespace {

Int floor_div(const Int& x, const Int& y) {
    Int q = x / y, r = x % y;
    if (r != 0 && ((r < 0) != (y < 0))) --q;
    return q;
}

Int mod_pos(const Int& x, const Int& y) {
    Int r = x % y;
    if (r < 0) r += (y < 0 ? -y : y);
    return r;
}

Int gcd3(const Int& a, const Int& b, const Int& c) {
    return mp::gcd(mp::gcd(a, b), c);
}

Int isqrt(const Int& n) { return n <= 0 ? Int(0) : Int(mp::sqrt(n)); }

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    return mp::miller_rabin_test(n, 32);
}

} // namespace

// ---------------- integer lattice helpers ----------------

IntMat2xN hnf_2xn(const IntMat2xN& m, std::vector<std::vector<Int>>* transform) {
    size_t n = m.cols.size();
    IntMat2xN h = m;
    std::vector<std::vector<Int>> U;
    if (transform) {
        U.assign(n, std::vector<Int>(n, 0));
        for (size_t i = 0; i < n; ++i) U[i][i] = 1;
    }
    auto addmul = [&](size_t dst, size_t src, const Int& q) {
        h.cols[dst][0] += q * h.cols[src][0];
        h.cols[dst][1] += q * h.cols[src][1];
        if (transform)
            for (size_t i = 0; i < n; ++i) U[i][dst] += q * U[i][src];
    };
    auto colswap = [&](size_t i, size_t j) {
        if (i == j) return;
        std::swap(h.cols[i], h.cols[j]);
        if (transform)
            for (size_t r = 0; r < n; ++r) std::swap(U[r][i], U[r][j]);
    };
    auto negate = [&](size_t i) {
        h.cols[i][0] = -h.cols[i][0];
        h.cols[i][1] = -h.cols[i][1];
        if (transform)
            for (size_t r = 0; r < n; ++r) U[r][i] = -U[r][i];
    };

    // Reduce row 1 (the omega coordinate) to a single pivot by Euclid.
    for (;;) {
        size_t piv = n;
        for (size_t j = 0; j < n; ++j)
            if (h.cols[j][1] != 0 &&
                (piv == n || mp::abs(h.cols[j][1]) < mp::abs(h.cols[piv][1])))
                piv = j;
        if (piv == n) break;
        bool done = true;
        for (size_t j = 0; j < n; ++j) {
            if (j == piv || h.cols[j][1] == 0) continue;
            Int q = -floor_div(h.cols[j][1], h.cols[piv][1]);
            addmul(j, piv, q);
            if (h.cols[j][1] != 0) done = false;
        }
        if (done) {
            colswap(piv, n - 1);
            break;
        }
    }
    size_t y_piv = n - 1;
    bool has_y = n > 0 && h.cols[y_piv][1] != 0;
    if (has_y && h.cols[y_piv][1] < 0) negate(y_piv);

    // Reduce row 0 among the remaining columns.
    size_t limit = has_y ? n - 1 : n;
    for (;;) {
        size_t piv = limit;
        for (size_t j = 0; j < limit; ++j)
            if (h.cols[j][0] != 0 &&
                (piv == limit || mp::abs(h.cols[j][0]) < mp::abs(h.cols[piv][0])))
                piv = j;
        if (piv == limit) break;
        bool done = true;
        for (size_t j = 0; j < limit; ++j) {
            if (j == piv || h.cols[j][0] == 0) continue;
            Int q = -floor_div(h.cols[j][0], h.cols[piv][0]);
            addmul(j, piv, q);
            if (h.cols[j][0] != 0) done = false;
        }
        if (done) {
            colswap(piv, 0);
            break;
        }
    }
    bool has_x = limit > 0 && h.cols[0][0] != 0;
    if (has_x && h.cols[0][0] < 0) negate(0);

    // Normalize the x coordinate of the y-pivot column into [0, a).
    if (has_x && has_y) {
        Int q = -floor_div(h.cols[y_piv][0], h.cols[0][0]);
        addmul(y_piv, 0, q);
    }
    if (transform) *transform = std::move(U);
    return h;
}

std::optional<std::vector<Int>> solve_integer(const IntMat2xN& m, const std::array<Int, 2>& rhs) {
    size_t n = m.cols.size();
    std::vector<std::vector<Int>> U;
    IntMat2xN h = hnf_2xn(m, &U);
    // h columns: index 0 = (a,0) pivot (maybe zero), index n-1 = (b,c) pivot.
    Int a = n > 0 ? h.cols[0][0] : Int(0);
    Int b = n > 0 ? h.cols[n - 1][0] : Int(0);
    Int c = n > 0 ? h.cols[n - 1][1] : Int(0);
    Int k2 = 0, k1 = 0;
    if (rhs[1] != 0) {
        if (c == 0 || rhs[1] % c != 0) return std::nullopt;
        k2 = rhs[1] / c;
    }
    Int rem = rhs[0] - k2 * b;
    if (rem != 0) {
        if (a == 0 || rem % a != 0) return std::nullopt;
        k1 = rem / a;
    }
    std::vector<Int> k(n, 0);
    if (n > 0) {
        k[0] = k1;
        k[n - 1] += k2;
    }
    std::vector<Int> x(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) x[i] += U[i][j] * k[j];
    return x;
}

// ---------------- FracIdeal ----------------

FracIdeal FracIdeal::from_hnf(const FieldCtx& ctx, const Int& den, const Int& a,
                              const Int& b, const Int& c) {
    if (den <= 0 || a <= 0 || c <= 0) throw Error("FracIdeal: bad HNF data");
    FracIdeal I;
    I.ctx_ = &ctx;
    I.den_ = den;
    I.a_ = a;
    I.b_ = mod_pos(b, a);
    I.c_ = c;
    Int g = mp::gcd(gcd3(I.a_, I.b_, I.c_), I.den_);
    if (g > 1) {
        I.den_ /= g;
        I.a_ /= g;
        I.b_ /= g;
        I.c_ /= g;
    }
    if (I.a_ % I.c_ != 0 || I.b_ % I.c_ != 0)
        throw Error("FracIdeal: lattice is not an O-module");
    QuadElem beta(ctx, Rat(I.b_), Rat(I.c_));
    Rat nb = beta.norm();
    if (mp::denominator(nb) != 1 || Int(mp::numerator(nb)) % (I.a_ * I.c_) != 0)
        throw Error("FracIdeal: HNF norm invariant violated");
    return I;
}

FracIdeal FracIdeal::ring_of_integers(const FieldCtx& ctx) {
    return from_hnf(ctx, 1, 1, 0, 1);
}

FracIdeal FracIdeal::principal(const QuadElem& z) {
    return from_generators({z});
}

FracIdeal FracIdeal::from_generators(const std::vector<QuadElem>& gens) {
    const FieldCtx* ctx = nullptr;
    Int den = 1;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        ctx = &g.ctx();
        den = mp::lcm(den, mp::lcm(Int(mp::denominator(g.x())), Int(mp::denominator(g.y()))));
    }
    if (!ctx) throw ZeroIdeal();
    QuadElem w = ctx->omega();
    IntMat2xN m;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (const QuadElem& z : {g, g * w}) {
            Rat xs = z.x() * Rat(den), ys = z.y() * Rat(den);
            m.cols.push_back({Int(mp::numerator(xs)), Int(mp::numerator(ys))});
        }
    }
    IntMat2xN h = hnf_2xn(m);
    size_t n = h.cols.size();
    Int a = h.cols[0][0], b = h.cols[n - 1][0], c = h.cols[n - 1][1];
    if (a == 0 || c == 0) throw Error("FracIdeal: generators do not span a full lattice");
    return from_hnf(*ctx, den, a, b, c);
}

QuadElem FracIdeal::basis1() const { return QuadElem(*ctx_, Rat(a_, den_), 0); }

QuadElem FracIdeal::basis2() const {
    return QuadElem(*ctx_, Rat(b_, den_), Rat(c_, den_));
}

FracIdeal FracIdeal::mul(const FracIdeal& o) const {
    std::vector<QuadElem> gens;
    for (const QuadElem& u : {basis1(), basis2()})
        for (const QuadElem& v : {o.basis1(), o.basis2()}) gens.push_back(u * v);
    return from_generators(gens);
}

FracIdeal FracIdeal::inv() const {
    return conj().scale(Rat(1) / norm());
}

FracIdeal FracIdeal::conj() const {
    return from_generators({basis1().conj(), basis2().conj()});
}

FracIdeal FracIdeal::add(const FracIdeal& o) const {
    return from_generators({basis1(), basis2(), o.basis1(), o.basis2()});
}

FracIdeal FracIdeal::scale(const Rat& r) const {
    if (r == 0) throw ZeroIdeal();
    QuadElem s = ctx_->from_rational(r);
    return from_generators({basis1() * s, basis2() * s});
}

FracIdeal FracIdeal::pow(long e) const {
    FracIdeal base = e < 0 ? inv() : *this;
    unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
    FracIdeal acc = ring_of_integers(*ctx_);
    while (k > 0) {
        if (k & 1) acc = acc.mul(base);
        base = base.mul(base);
        k >>= 1;
    }
    return acc;
}

FracIdeal FracIdeal::intersect(const FracIdeal& o) const {
    // Solve B_this * u = B_other * w over Z^2 x Z^2; the u-lattice pulled
    // back through T = B_other^{-1} B_this gives the intersection.
    Rat t(ctx_->omega_trace());
    // Basis matrices in (1, omega) coordinates, columns.
    Rat m1[2][2] = {{Rat(a_, den_), Rat(b_, den_)}, {0, Rat(c_, den_)}};
    Rat m2[2][2] = {{Rat(o.a_, o.den_), Rat(o.b_, o.den_)}, {0, Rat(o.c_, o.den_)}};
    (void)t;
    Rat det2 = m2[0][0] * m2[1][1];
    Rat inv2[2][2] = {{m2[1][1] / det2, -m2[0][1] / det2}, {0, m2[0][0] / det2}};
    Rat T[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            T[i][j] = inv2[i][0] * m1[0][j] + inv2[i][1] * m1[1][j];
    Int D = 1;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) D = mp::lcm(D, Int(mp::denominator(T[i][j])));
    // u with D*T*u = 0 mod D  <=>  [DT | D*I] * (u, -w) = 0.
    IntMat2xN m;
    for (int j = 0; j < 2; ++j) {
        Rat c0 = T[0][j] * Rat(D), c1 = T[1][j] * Rat(D);
        m.cols.push_back({Int(mp::numerator(c0)), Int(mp::numerator(c1))});
    }
    m.cols.push_back({D, 0});
    m.cols.push_back({0, D});
    std::vector<std::vector<Int>> U;
    IntMat2xN h = hnf_2xn(m, &U);
    std::vector<QuadElem> gens;
    for (size_t j = 0; j < h.cols.size(); ++j) {
        if (h.cols[j][0] != 0 || h.cols[j][1] != 0) continue;
        // kernel vector: first two entries give u.
        Int u0 = U[0][j], u1 = U[1][j];
        if (u0 == 0 && u1 == 0) continue;
        gens.push_back(basis1() * Rat(u0) + basis2() * Rat(u1));
    }
    return from_generators(gens);
}

bool FracIdeal::contains(const QuadElem& z) const {
    if (z.is_zero()) return true;
    Rat ys = z.y() * Rat(den_);
    Rat v = ys / Rat(c_);
    if (mp::denominator(v) != 1) return false;
    Rat xs = z.x() * Rat(den_) - v * Rat(b_);
    Rat u = xs / Rat(a_);
    return mp::denominator(u) == 1;
}

bool FracIdeal::contains_lattice(const FracIdeal& o) const {
    return contains(o.basis1()) && contains(o.basis2());
}

bool FracIdeal::coprime_to(const FracIdeal& o) const {
    return add(o).is_ring();
}

std::optional<QuadElem> FracIdeal::principal_generator() const {
    // Search gamma = u*basis1 + v*basis2 with Nm(gamma) = Nm(I); the norm
    // form is A u^2 + B uv + C v^2 over den^2.
    Int t = ctx_->omega_trace();
    Int A = a_ * a_;
    Int B = a_ * (2 * b_ + t * c_);
    QuadElem beta(*ctx_, Rat(b_), Rat(c_));
    Int C(mp::numerator(beta.norm()));
    Int target = a_ * c_;
    Int disc = B * B - 4 * A * C;  // = a^2 c^2 d < 0
    Int vmax = isqrt(Int(4 * A * target / (-disc))) + 1;
    for (Int v = 0; v <= vmax; ++v) {
        Int dd = B * B * v * v - 4 * A * (C * v * v - target);
        if (dd < 0) continue;
        Int s = isqrt(dd);
        if (s * s != dd) continue;
        for (int sign = 0; sign < (s == 0 ? 1 : 2); ++sign) {
            Int num = -B * v + (sign == 0 ? s : -s);
            if (num % (2 * A) != 0) continue;
            Int u = num / (2 * A);
            if (u == 0 && v == 0) continue;
            QuadElem g = basis1() * Rat(u) + basis2() * Rat(v);
            if (g.norm() == norm()) return g;
        }
    }
    return std::nullopt;
}

bool FracIdeal::operator<(const FracIdeal& o) const {
    if (den_ != o.den_) return den_ < o.den_;
    if (a_ != o.a_) return a_ < o.a_;
    if (b_ != o.b_) return b_ < o.b_;
    return c_ < o.c_;
}

std::ostream& operator<<(std::ostream& os, const FracIdeal& I) {
    os << "(" << I.a() << ", " << I.b() << "+" << I.c() << "w)";
    if (I.den() != 1) os << "/" << I.den();
    return os;
}

// ---------------- prime ideals ----------------

PrimeIdeal PrimeIdeal::conj() const {
    PrimeIdeal q = *this;
    q.ideal = ideal.conj();
    return q;
}

std::vector<std::pair<PrimeIdeal, int>> factor_prime(const FieldCtx& ctx, const Int& ell) {
    if (!is_prime(ell)) throw NotPrime();
    // Roots of x^2 - t x - n0 mod ell classify the splitting.
    Int t = ctx.omega_trace(), n0 = ctx.omega_sq_const();
    std::vector<Int> roots;
    for (Int x = 0; x < ell; ++x)
        if (mod_pos(x * x - t * x - n0, ell) == 0) roots.push_back(x);
    std::vector<std::pair<PrimeIdeal, int>> out;
    if (roots.empty()) {
        PrimeIdeal P{ell, SplitType::inert,
                     FracIdeal::from_hnf(ctx, 1, ell, 0, ell), 2};
        out.push_back({P, 1});
    } else if (roots.size() == 1) {
        PrimeIdeal P{ell, SplitType::ramified,
                     FracIdeal::from_hnf(ctx, 1, ell, mod_pos(-roots[0], ell), 1), 1};
        out.push_back({P, 2});
    } else {
        std::vector<Int> bs = {mod_pos(-roots[0], ell), mod_pos(-roots[1], ell)};
        std::sort(bs.begin(), bs.end());
        for (const Int& b : bs) {
            PrimeIdeal P{ell, SplitType::split,
                         FracIdeal::from_hnf(ctx, 1, ell, b, 1), 1};
            out.push_back({P, 1});
        }
    }
    return out;
}

std::vector<PrimeIdeal> primes_up_to(const FieldCtx& ctx, const Int& bound) {
    std::vector<PrimeIdeal> out;
    for (Int ell = 2; ell <= bound; ++ell) {
        if (!is_prime(ell)) continue;
        for (auto& [P, e] : factor_prime(ctx, ell))
            if (P.norm() <= bound) out.push_back(P);
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& p, const PrimeIdeal& q) {
        if (p.norm() != q.norm()) return p.norm() < q.norm();
        return p.ideal.b() < q.ideal.b();
    });
    return out;
}

int ideal_val(const FracIdeal& I, const PrimeIdeal& P) {
    Int den = I.den();
    FracIdeal J = den == 1 ? I : I.scale(Rat(den));
    FracIdeal Pinv = P.ideal.inv();
    int v = 0;
    while (P.ideal.contains_lattice(J)) {
        J = J.mul(Pinv);
        ++v;
    }
    if (den != 1) {
        // subtract val of (den)
        Int d = den;
        int e = (P.split_type == SplitType::ramified) ? 2 : 1;
        int k = 0;
        while (d % P.ell == 0) {
            d /= P.ell;
            ++k;
        }
        v -= e * k;
    }
    return v;
}

int elem_val(const QuadElem& z, const PrimeIdeal& P) {
    if (z.is_zero()) throw Error("elem_val of zero");
    return ideal_val(FracIdeal::principal(z), P);
}

std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const FracIdeal& I) {
    std::vector<Int> rational_primes;
    Int m = I.a() * I.c() * I.den();
    for (Int ell = 2; ell * ell <= m; ++ell)
        if (m % ell == 0) {
            rational_primes.push_back(ell);
            while (m % ell == 0) m /= ell;
        }
    if (m > 1) rational_primes.push_back(m);
    std::vector<std::pair<PrimeIdeal, int>> out;
    for (const Int& ell : rational_primes)
        for (auto& [P, e] : factor_prime(I.ctx(), ell)) {
            int v = ideal_val(I, P);
            if (v != 0) out.push_back({P, v});
        }
    return out;
}

// ---------------- CRT element construction ----------------

QuadElem crt_construct(const FieldCtx& ctx, const std::vector<ValConstraint>& constraints) {
    QuadElem one(ctx, 1, 0);
    if (constraints.empty()) return one;
    std::map<FracIdeal, std::pair<ValConstraint::Kind, int>> want;
    for (const auto& cst : constraints) {
        int k = cst.kind == ValConstraint::zero ? 0 : cst.k;
        auto it = want.find(cst.prime.ideal);
        if (it != want.end()) {
            if (it->second.first != cst.kind || it->second.second != k)
                throw InconsistentConstraints();
            continue;
        }
        want[cst.prime.ideal] = {cst.kind, k};
    }
    FracIdeal L = FracIdeal::ring_of_integers(ctx);
    for (const auto& cst : constraints) {
        int m = 0;
        switch (cst.kind) {
            case ValConstraint::eq: m = cst.k; break;
            case ValConstraint::gt: m = cst.k + 1; break;
            case ValConstraint::zero: m = 0; break;
        }
        if (m != 0) L = L.mul(cst.prime.ideal.pow(m));
    }
    auto satisfies = [&](const QuadElem& z) {
        for (const auto& cst : constraints) {
            int v = elem_val(z, cst.prime);
            switch (cst.kind) {
                case ValConstraint::eq:
                    if (v != cst.k) return false;
                    break;
                case ValConstraint::gt:
                    if (v <= cst.k) return false;
                    break;
                case ValConstraint::zero:
                    if (v != 0) return false;
                    break;
            }
        }
        return true;
    };
    for (long B = 1; B <= 4096; B *= 2) {
        struct Cand {
            Rat norm;
            long u, v;
        };
        std::vector<Cand> cands;
        for (long u = -B; u <= B; ++u)
            for (long v = -B; v <= B; ++v) {
                if (u == 0 && v == 0) continue;
                if (B > 1 && std::abs(u) <= B / 2 && std::abs(v) <= B / 2) continue;
                QuadElem z = L.basis1() * Rat(u) + L.basis2() * Rat(v);
                cands.push_back({z.norm(), u, v});
            }
        std::sort(cands.begin(), cands.end(), [](const Cand& p, const Cand& q) {
            if (p.norm != q.norm) return p.norm < q.norm;
            if (p.u != q.u) return p.u < q.u;
            return p.v < q.v;
        });
        for (const auto& cd : cands) {
            QuadElem z = L.basis1() * Rat(cd.u) + L.basis2() * Rat(cd.v);
            if (satisfies(z)) return z;
        }
    }
    throw InconsistentConstraints("crt_construct: search bound exhausted");
}

// ---------------- residues mod an integral ideal ----------------

QuadElem mod_reduce(const QuadElem& z, const FracIdeal& m) {
    if (!m.is_integral()) throw Error("mod_reduce: modulus must be integral");
    if (!z.is_integral()) throw Error("mod_reduce: element must be integral");
    Int x(mp::numerator(z.x())), y(mp::numerator(z.y()));
    Int ry = mod_pos(y, m.c());
    Int k = (y - ry) / m.c();
    Int rx = mod_pos(x - k * m.b(), m.a());
    return QuadElem(z.ctx(), Rat(rx), Rat(ry));
}

std::optional<QuadElem> mod_invert(const QuadElem& z, const FracIdeal& m) {
    const FieldCtx& ctx = z.ctx();
    QuadElem zw = z * ctx.omega();
    auto col = [](const QuadElem& q) -> std::array<Int, 2> {
        return {Int(mp::numerator(q.x())), Int(mp::numerator(q.y()))};
    };
    IntMat2xN mat;
    mat.cols.push_back(col(z));
    mat.cols.push_back(col(zw));
    mat.cols.push_back({m.a(), Int(0)});
    mat.cols.push_back({m.b(), m.c()});
    auto sol = solve_integer(mat, {Int(1), Int(0)});
    if (!sol) return std::nullopt;
    QuadElem w(ctx, Rat((*sol)[0]), Rat((*sol)[1]));
    return mod_reduce(w, m);
}

bool mod_equal(const QuadElem& u, const QuadElem& v, const FracIdeal& m) {
    return m.contains(u - v);
}

QuadElem mod_reduce_fraction(const QuadElem& z, const FracIdeal& m) {
    if (z.is_zero()) throw Error("mod_reduce_fraction of zero");
    const FieldCtx& ctx = z.ctx();
    auto mfac = factor_ideal(m);
    FracIdeal zid = FracIdeal::principal(z);
    for (auto& [P, e] : mfac)
        if (ideal_val(zid, P) != 0) throw NotCoprime("element not a unit at the modulus");
    if (z.is_integral()) return mod_reduce(z, m);
    // Re-generate the denominator coprime to m: pick q with ord_P(q) matching
    // the denominator ideal of (z) and ord_P(q) = 0 at primes dividing m.
    std::vector<ValConstraint> cons;
    for (auto& [P, v] : factor_ideal(zid))
        if (v < 0) cons.push_back({ValConstraint::eq, P, -v});
    for (auto& [P, e] : mfac) cons.push_back({ValConstraint::zero, P, 0});
    QuadElem q = crt_construct(ctx, cons);
    QuadElem p = z * q;
    if (!p.is_integral() || !q.is_integral())
        throw Error("mod_reduce_fraction: regeneration failed");
    auto qinv = mod_invert(mod_reduce(q, m), m);
    if (!qinv) throw NotCoprime();
    return mod_reduce(mod_reduce(p, m) * (*qinv), m);
}

Int unit_group_order_mod(const FracIdeal& m) {
    if (!m.is_integral()) throw Error("unit_group_order_mod: integral modulus required");
    const FieldCtx& ctx = m.ctx();
    if (m.is_ring()) return 1;
    Int count = 0;
    for (Int x = 0; x < m.a(); ++x)
        for (Int y = 0; y < m.c(); ++y) {
            QuadElem z(ctx, Rat(x), Rat(y));
            if (z.is_zero()) continue;
            if (mod_invert(z, m)) ++count;
        }
    return count;
}

} // namespace eis
