#include "eis/cusps.hpp"

#include <algorithm>

namespace eis {

namespace mp = boost::multiprecision;

bool MaxArithGroup::contains(const Mat2F& m) const {
    QuadElem one(ideal_b.ctx(), 1, 0);
    if (m.det() != one) return false;
    if (!m.e[0][0].is_integral() || !m.e[1][1].is_integral()) return false;
    return ideal_b.contains(m.e[0][1]) && ideal_b.inv().contains(m.e[1][0]);
}

Mat2F MaxArithGroup::involution_matrix() const {
    const FieldCtx& ctx = ideal_b.ctx();
    QuadElem zero(ctx, 0, 0), one(ctx, 1, 0);
    QuadElem c = ctx.from_rational(Rat(-1) / ideal_b.norm());
    return {{{zero, one}, {c, zero}}};
}

FracIdeal cusp_ideal(const QuadElem& z1, const QuadElem& z2, const FracIdeal& b) {
    if (z1.is_zero() && z2.is_zero()) throw BothZero();
    const FieldCtx& ctx = b.ctx();
    return FracIdeal::from_generators(
        {z1 * b.basis1(), z1 * b.basis2(), z2, z2 * ctx.omega()});
}

long j_map(const QuadElem& z1, const QuadElem& z2, const FracIdeal& b, const ClassGroup& cl) {
    return cl.class_index(cusp_ideal(z1, z2, b));
}

namespace {

// Complete the row (x1,x2) to a matrix X with det 1 whose rows form a
// pseudo-basis (a^{-1}, a b^{-1}) of the module b^{-1} + O, a = x1 b + x2 O.
Mat2F complete_row(const QuadElem& x1, const QuadElem& x2, const FracIdeal& b,
                   const FracIdeal& a) {
    const FieldCtx& ctx = b.ctx();
    FracIdeal I1 = a.inv();          // coefficient lattice for w1
    FracIdeal I2 = a.inv().mul(b);   // coefficient lattice for w2
    // solve x1*w2 - x2*w1 = 1 over the two lattices
    std::vector<QuadElem> cols = {x1 * I2.basis1(), x1 * I2.basis2(),
                                  -(x2 * I1.basis1()), -(x2 * I1.basis2())};
    Int D = 1;
    for (const auto& q : cols) {
        D = mp::lcm(D, Int(mp::denominator(q.x())));
        D = mp::lcm(D, Int(mp::denominator(q.y())));
    }
    IntMat2xN m;
    for (const auto& q : cols) {
        Rat xs = q.x() * Rat(D), ys = q.y() * Rat(D);
        m.cols.push_back({Int(mp::numerator(xs)), Int(mp::numerator(ys))});
    }
    auto sol = solve_integer(m, {D, Int(0)});
    if (!sol) throw Error("cusp completion: no solution");
    QuadElem w2 = I2.basis1() * Rat((*sol)[0]) + I2.basis2() * Rat((*sol)[1]);
    QuadElem w1 = I1.basis1() * Rat((*sol)[2]) + I1.basis2() * Rat((*sol)[3]);
    Mat2F X{{{x1, x2}, {w1, w2}}};
    if (X.det() != QuadElem(ctx, 1, 0)) throw Error("cusp completion: determinant not 1");
    return X;
}

} // namespace

bool cusp_equiv(const QuadElem& x1, const QuadElem& x2, const QuadElem& y1,
                const QuadElem& y2, const FracIdeal& b, Mat2F* witness) {
    FracIdeal ax = cusp_ideal(x1, x2, b);
    FracIdeal ay = cusp_ideal(y1, y2, b);
    if (ax != ay) return false;
    if (witness) {
        Mat2F X = complete_row(x1, x2, b, ax);
        Mat2F Y = complete_row(y1, y2, b, ay);
        Mat2F sigma = Y.inverse().mul(X);
        MaxArithGroup H{b};
        if (!H.contains(sigma)) throw Error("cusp witness left H(b)");
        auto [r1, r2] = row_apply(y1, y2, sigma);
        if (r1 != x1 || r2 != x2) throw Error("cusp witness does not map rows");
        *witness = sigma;
    }
    return true;
}

std::vector<CuspClass> cusp_reps(const FracIdeal& b, const ClassGroup& cl) {
    long h = cl.h();
    std::vector<CuspClass> out;
    for (long k = 0; k < h; ++k) {
        // build (z1, z2) with z1 b + z2 O = a directly from the class ideal:
        // z1 ranges over a b^{-1}, z2 over a, so the cusp ideal is contained
        // in a and small coefficient boxes quickly hit equality
        FracIdeal a = cl.class_rep_ideal(k);
        FracIdeal ab = a.mul(b.inv());
        std::optional<CuspClass> best;
        Rat bestsize;
        for (long B = 1; B <= 32 && !best; B *= 2) {
            for (long r = -B; r <= B; ++r)
                for (long s = -B; s <= B; ++s)
                    for (long p = -B; p <= B; ++p)
                        for (long q = -B; q <= B; ++q) {
                            QuadElem z1 = ab.basis1() * Rat(r) + ab.basis2() * Rat(s);
                            QuadElem z2 = a.basis1() * Rat(p) + a.basis2() * Rat(q);
                            if (z1.is_zero() && z2.is_zero()) continue;
                            if (!(cusp_ideal(z1, z2, b) == a)) continue;
                            Rat size = z1.norm() + z2.norm();
                            if (best && size >= bestsize) continue;
                            CuspClass c;
                            c.z1 = z1;
                            c.z2 = z2;
                            c.ideal_class = k;
                            best = c;
                            bestsize = size;
                        }
        }
        if (!best) throw Error("cusp_reps: search bound exhausted");
        best->stabilizer_lattice = cusp_stabilizer(*best, b, cl);
        out.push_back(*best);
    }
    return out;
}

FracIdeal cusp_stabilizer(const CuspClass& c, const FracIdeal& b, const ClassGroup& cl) {
    (void)cl;
    FracIdeal a = cusp_ideal(c.z1, c.z2, b);
    FracIdeal expected = a.pow(-2).mul(b);
    // cross-check against the translation-parameter lattice of the explicit
    // unipotent I + t*(z1 z2, z2^2; -z1^2, -z1 z2)
    std::optional<FracIdeal> lam;
    auto meet = [&](const FracIdeal& J) { lam = lam ? lam->intersect(J) : J; };
    if (!c.z1.is_zero() && !c.z2.is_zero())
        meet(FracIdeal::principal(c.z1 * c.z2).inv());
    if (!c.z2.is_zero()) meet(b.mul(FracIdeal::principal(c.z2 * c.z2).inv()));
    if (!c.z1.is_zero()) meet(b.inv().mul(FracIdeal::principal(c.z1 * c.z1).inv()));
    if (!lam || !(*lam == expected)) throw Error("cusp stabilizer lattice mismatch");
    return expected;
}

Mat2F cusp_unipotent(const CuspClass& c, const QuadElem& t) {
    const FieldCtx& ctx = t.ctx();
    QuadElem one(ctx, 1, 0);
    Mat2F m;
    m.e[0][0] = one + t * c.z1 * c.z2;
    m.e[0][1] = t * c.z2 * c.z2;
    m.e[1][0] = -(t * c.z1 * c.z1);
    m.e[1][1] = one - t * c.z1 * c.z2;
    return m;
}

std::vector<std::pair<long, long>> involution_pairs(std::vector<CuspClass>& cusps,
                                                    const FracIdeal& b, const ClassGroup& cl,
                                                    bool allow_fixed) {
    long kb = cl.class_index(b);
    bool square = cl.is_square(kb);
    if (square && !allow_fixed) throw SquareClass();
    // partner of class [a] is [conj(a) * b]
    std::vector<long> by_class(cl.h(), -1);
    for (size_t i = 0; i < cusps.size(); ++i) by_class[cusps[i].ideal_class] = (long)i;
    std::vector<std::pair<long, long>> pairs;
    for (size_t i = 0; i < cusps.size(); ++i) {
        FracIdeal a = cusp_ideal(cusps[i].z1, cusps[i].z2, b);
        long kpart = cl.compose(cl.class_index(a.conj()), kb);
        long j = by_class[kpart];
        if (j < 0) throw Error("involution: partner class missing");
        cusps[i].partner = j;
        pairs.push_back({(long)i, j});
    }
    for (auto& [i, j] : pairs) {
        if (cusps[j].partner != i) throw Error("involution is not an involution");
        if (!square && i == j) throw Error("involution has a fixed point off the square case");
    }
    return pairs;
}

} // namespace eis
