#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eis/characters.hpp"

using namespace eis;

namespace {

struct Lcg {
    unsigned long long s = 0x2545f4914f6cdd1dULL;
    long next(long mod) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return (long)((s >> 33) % (unsigned long long)mod);
    }
};

CharValue rat_value(const FieldCtx& F, const Rat& r) {
    return CharValue(F.from_rational(r));
}

} // namespace

TEST_CASE("existence and counts") {
    FieldCtx F67(-67);
    ClassGroup C67(F67);
    FracIdeal O67 = FracIdeal::ring_of_integers(F67);
    CHECK(char_build(C67, O67, 2, 0).size() == 1);
    CHECK_THROWS_AS(char_build(C67, O67, 1, 0), NoSuchCharacter);

    FieldCtx F20(-20);
    ClassGroup C20(F20);
    FracIdeal O20 = FracIdeal::ring_of_integers(F20);
    CHECK(char_build(C20, O20, 2, 0).size() == 2);

    // torsor property: counts equal ray class order for ramified moduli too
    FracIdeal q17 = factor_prime(F67, 17)[0].first.ideal;
    CHECK(char_build(C67, q17, 2, 0).size() == 8);
    CHECK(char_build(C67, q17, 1, 0).size() == 8);
}

TEST_CASE("evaluation basics for d=-67") {
    FieldCtx F(-67);
    ClassGroup C(F);
    HeckeChar chi = char_build(C, FracIdeal::ring_of_integers(F), 2, 0)[0];

    CHECK(chi.eval(FracIdeal::ring_of_integers(F)).equals(rat_value(F, 1)));

    // chi((sqrt -67)) = (sqrt -67)^{-2} = -1/67
    FracIdeal rd = FracIdeal::principal(F.sqrt_d());
    CHECK(chi.eval(rd).equals(rat_value(F, Rat(-1, 67))));

    FracIdeal two = FracIdeal::principal(QuadElem(F, 2, 0));
    CHECK(chi.eval(two).equals(rat_value(F, Rat(1, 4))));

    // a ramified character refuses ideals meeting its modulus
    FracIdeal q17 = factor_prime(F, 17)[0].first.ideal;
    HeckeChar ram = char_build(C, q17, 2, 0)[0];
    CHECK_THROWS_AS(ram.eval(q17), NotCoprime);
}

TEST_CASE("unitarized trace at 17 for d=-67") {
    FieldCtx F(-67);
    ClassGroup C(F);
    HeckeChar chi = char_build(C, FracIdeal::ring_of_integers(F), 2, 0)[0];
    auto ps = factor_prime(F, 17);
    REQUIRE(ps.size() == 2);
    CharValue s = chi.eval_tilde(ps[0].first.ideal).mul(
        chi.eval_tilde(ps[1].first.ideal).inv().inv());
    CharValue sum = chi.eval_tilde(ps[0].first.ideal);
    CharValue other = chi.eval_tilde(ps[1].first.ideal);
    REQUIRE(sum.symbols().empty());
    REQUIRE(other.symbols().empty());
    REQUIRE(sum.root() == 0);
    REQUIRE(other.root() == 0);
    QuadElem tot = sum.beta() + other.beta();
    CHECK(tot == F.from_rational(Rat(-33, 17)));
    // |chi-tilde| = 1: product with conjugate value is 1
    CHECK(sum.beta() * other.beta() == QuadElem(F, 1, 0));
    (void)s;
}

TEST_CASE("multiplicativity on random coprime pairs") {
    Lcg rng;
    for (long d : {-67L, -20L}) {
        FieldCtx F{Int(d)};
        ClassGroup C(F);
        FracIdeal O = FracIdeal::ring_of_integers(F);
        for (const HeckeChar& chi : char_build(C, O, 2, 0)) {
            auto ps = primes_up_to(F, 60);
            for (int trial = 0; trial < 100; ++trial) {
                const PrimeIdeal& P = ps[rng.next((long)ps.size())];
                const PrimeIdeal& Q = ps[rng.next((long)ps.size())];
                if (P.ell == Q.ell) continue;
                FracIdeal I = P.ideal.pow(1 + rng.next(2));
                FracIdeal J = Q.ideal.pow(1 + rng.next(2));
                CHECK(chi.eval(I.mul(J)).equals(chi.eval(I).mul(chi.eval(J))));
            }
        }
    }
}

TEST_CASE("symmetry reports") {
    FieldCtx F67(-67);
    ClassGroup C67(F67);
    FracIdeal O67 = FracIdeal::ring_of_integers(F67);
    CHECK(char_symmetry(char_build(C67, O67, 2, 0)[0]).c_equals_bar);
    CHECK(char_symmetry(char_build(C67, O67, 0, 0)[0]).c_equals_bar);

    FieldCtx F20(-20);
    ClassGroup C20(F20);
    FracIdeal O20 = FracIdeal::ring_of_integers(F20);
    for (const HeckeChar& chi : char_build(C20, O20, 2, 0)) {
        auto rep = char_symmetry(chi);
        CHECK(rep.c_equals_bar);
        CHECK(rep.anticyclotomic_twistable);
    }

    // genuinely ramified character of odd type: symmetry fails
    FracIdeal p3 = factor_prime(F20, 3)[0].first.ideal;
    auto chis = char_build(C20, p3, 1, 0);
    CHECK(chis.size() == 2);
    bool any_false = false;
    for (const HeckeChar& chi : chis)
        if (!char_symmetry(chi).c_equals_bar) any_false = true;
    CHECK(any_false);
}

TEST_CASE("phi factorization for d=-67, q above 17") {
    FieldCtx F(-67);
    ClassGroup C(F);
    HeckeChar chi = char_build(C, FracIdeal::ring_of_integers(F), 2, 0)[0];
    PrimeIdeal q = factor_prime(F, 17)[0].first;

    auto [phi1, phi2] = phi_factor(chi, q, 19);
    CHECK(phi1.type_a() == 1);
    CHECK(phi1.type_b() == 0);
    CHECK(phi2.type_a() == -1);
    CHECK(phi1.modulus() == q.ideal);
    CHECK(phi1.ray().order() == 8);

    // phi1((alpha)) = alpha^{-1} for alpha = 1 mod q
    QuadElem a18(F, 18, 0);
    CHECK(phi1.eval(FracIdeal::principal(a18)).equals(CharValue(a18.inv())));

    // chi((2)) = 1/4 recovered through the quotient
    FracIdeal two = FracIdeal::principal(QuadElem(F, 2, 0));
    CHECK(phi1.eval(two).mul(phi2.eval(two).inv()).equals(rat_value(F, Rat(1, 4))));

    // guards
    CHECK_THROWS_AS(phi_factor(chi, q, 2), BadAuxPrime);  // 2 | 17-1
    PrimeIdeal inert5 = factor_prime(F, 5)[0].first;
    REQUIRE(inert5.split_type == SplitType::inert);
    CHECK_THROWS_AS(phi_factor(chi, inert5, 19), BadAuxPrime);
}

TEST_CASE("frobenius tameness checks") {
    FieldCtx F67(-67);
    ClassGroup C67(F67);
    HeckeChar chi = char_build(C67, FracIdeal::ring_of_integers(F67), 2, 0)[0];

    PrimeIdeal v2 = factor_prime(F67, 2)[0].first;
    REQUIRE(v2.split_type == SplitType::inert);
    CHECK(frob_tame_check(chi, 19, v2));  // 4 != +-1 mod 19

    PrimeIdeal v67 = factor_prime(F67, 67)[0].first;
    CHECK(frob_tame_check(chi, 19, v67));  // 67 = 10 mod 19

    // split v above 17 through the residue comparison
    PrimeIdeal v17 = factor_prime(F67, 17)[0].first;
    CHECK(frob_tame_check(chi, 19, v17));

    // inert v with Nm = 1 mod p must fail
    FieldCtx F20(-20);
    ClassGroup C20(F20);
    HeckeChar chi20 = char_build(C20, FracIdeal::ring_of_integers(F20), 2, 0)[0];
    PrimeIdeal v19 = factor_prime(F20, 19)[0].first;
    REQUIRE(v19.split_type == SplitType::inert);
    CHECK(!frob_tame_check(chi20, 5, v19));  // 361 = 1 mod 5
}

TEST_CASE("exact value algebra") {
    FieldCtx F(-20);
    CharValue half(Rat(1, 2), QuadElem(F, 1, 0));  // e^{pi i} = -1
    CHECK(half.equals(rat_value(F, -1)));
    CHECK(half.mul(half).equals(rat_value(F, 1)));
    CharValue quarter(Rat(1, 4), QuadElem(F, 1, 0));
    CHECK(quarter.pow(2).equals(rat_value(F, -1)));
    CHECK(quarter.pow(4).equals(rat_value(F, 1)));
    CHECK(!quarter.equals(rat_value(F, 1)));
    Rat r;
    CHECK(half.is_rational(&r));
    CHECK(r == -1);

    auto s = std::make_shared<const CharSymbol>(CharSymbol{3, QuadElem(F, 8, 0)});
    CharValue g = CharValue::symbol(s, F);
    CHECK(g.pow(3).equals(rat_value(F, 8)));
    CHECK(g.mul(g.inv()).equals(rat_value(F, 1)));
    // principal cube root of 8 is 2
    CHECK(g.equals(rat_value(F, 2)));
    CHECK(!g.equals(rat_value(F, 3)));

    ScopedPrecision prec(40);
    Complex z = g.embed(40);
    CHECK((z - Complex(Real(2))).abs() < Real("1e-30"));
}

TEST_CASE("embedding matches exact values") {
    FieldCtx F(-67);
    ClassGroup C(F);
    HeckeChar chi = char_build(C, FracIdeal::ring_of_integers(F), 2, 0)[0];
    ScopedPrecision prec(45);
    auto ps = factor_prime(F, 17);
    Complex a = chi.eval_tilde(ps[0].first.ideal).embed(45);
    Complex b = chi.eval_tilde(ps[1].first.ideal).embed(45);
    CHECK(abs((a + b).re - Real(-33) / 17) < Real("1e-35"));
    CHECK(abs((a + b).im) < Real("1e-35"));
    CHECK(abs(a.abs() - 1) < Real("1e-35"));
}

TEST_CASE("serialization record") {
    FieldCtx F(-67);
    ClassGroup C(F);
    FracIdeal q17 = factor_prime(F, 17)[0].first.ideal;
    auto chis = char_build(C, q17, 1, 0);
    auto rec = chis[3].twist_record();
    REQUIRE(rec.size() == 1);
    CHECK(rec[0].first == 8);
    CHECK(rec[0].second == 3);
}
