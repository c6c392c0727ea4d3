#include <doctest.h>

#include <random>

#include "heckechar.hpp"

using namespace eiskron;

namespace {

// Q(i), modulus (3), infinity type -alpha, the minimal-order eps
HeckeCharacter base_char(long alpha, long p, int which = 0) {
    const auto& F = ImagQuadField::get(-4);
    Ideal three = Ideal::principal(F, QuadInt{3, 0});
    auto eps = HeckeCharacter::valid_eps(F, three, alpha);
    REQUIRE(!eps.empty());
    return HeckeCharacter(F, three, alpha, eps[which], p);
}

} // namespace

TEST_CASE("character construction and values") {
    const auto& F = ImagQuadField::get(-4);
    // alpha = 4: eps can be trivial mod (3); chi((2+i)) = (2+i)^{-4}
    HeckeCharacter chi = base_char(4, 5);
    CHECK(chi.eps_order() == 1);
    Ideal a = Ideal::principal(F, QuadInt{2, 1});
    CharValue v = chi.eval(a);
    CharValue expect{&F, ZetaPoly::from_q(Rat(1), 1), F.pow_si(QuadRat(Rat(2), Rat(1)), -4)};
    CHECK(v.equals(expect));

    // chi((xi)) = xi^{-alpha} for xi == 1 mod (3): xi = 4 + 3i
    Ideal b = Ideal::principal(F, QuadInt{4, 3});
    CHECK(chi.eval(b).equals(CharValue{&F, ZetaPoly::from_q(Rat(1), 1),
                                       F.pow_si(QuadRat(Rat(4), Rat(3)), -4)}));

    // multiplicativity on random pairs
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
        QuadInt x{Int(1 + rng() % 9), Int(rng() % 9)};
        QuadInt y{Int(rng() % 9), Int(1 + rng() % 9)};
        Ideal ix = Ideal::principal(F, x), iy = Ideal::principal(F, y);
        Ideal three = Ideal::principal(F, QuadInt{3, 0});
        if (!ix.is_coprime(three) || !iy.is_coprime(three)) continue;
        CHECK(chi.eval(ix.mul(iy)).equals(chi.eval(ix).mul(chi.eval(iy))));
    }

    // |chi(a)|^2 = Na^{-alpha} via the complex embedding
    CBall cv = v.embed(128);
    CBall n = cv * cv.conj();
    double na = 5.0 * 5.0 * 5.0 * 5.0 * 5.0 * 5.0 * 5.0 * 5.0; // (N(2+i))^alpha... 5^4
    CHECK(std::fabs(n.mid_re_d() - 1.0 / 625.0) < 1e-20);
    (void)na;

    CHECK_THROWS_AS((void)chi.eval(Ideal::principal(F, QuadInt{3, 0})), Error);
}

TEST_CASE("eps enumeration matches unit constraints") {
    const auto& F = ImagQuadField::get(-4);
    Ideal three = Ideal::principal(F, QuadInt{3, 0});
    // (O/3)^* is cyclic of order 8; the unit i has index 2 image, so there
    // are exactly 2 valid extensions for every alpha
    for (long alpha : {3L, 4L, 5L, 8L}) {
        auto eps = HeckeCharacter::valid_eps(F, three, alpha);
        CHECK(eps.size() == 2);
    }
    // orders: for alpha = 4 the minimal eps is trivial, for odd alpha order 8
    CHECK(base_char(4, 5).eps_order() == 1);
    CHECK(base_char(3, 5).eps_order() == 8);
    CHECK(base_char(5, 5).eps_order() == 8);
}

TEST_CASE("chi_fin at an unramified prime is trivial and level-consistent") {
    HeckeCharacter chi = base_char(4, 5);
    CHECK(chi.unramified_at_p());
    TorsionFunction f1 = chi.chi_fin(1);
    for (long i = 0; i < f1.size(); ++i) {
        TorsionPoint t = f1.point_at(i);
        if (f1.is_unit_point(t))
            CHECK(f1.value_at(i) == ZetaPoly::from_q(Rat(1), 1));
        else
            CHECK(f1.value_at(i).is_zero());
    }
    // level consistency: level 2 pulled back from level 1
    TorsionFunction f2 = chi.chi_fin(2);
    TorsionFunction f1p = f1; // unit-supported; compare on units of level 2
    for (long i = 0; i < f2.size(); ++i) {
        TorsionPoint t = f2.point_at(i);
        if (!f2.is_unit_point(t)) continue;
        TorsionPoint tm{{t.c[0] % 5, t.c[1] % 5}};
        CHECK(f2.value_at(i) == f1p.value(tm));
    }
}

TEST_CASE("defining property of chi_fin") {
    // chi((lambda)) = chi_fin(lambda) / lambda^alpha for lambda == 1 mod f
    const auto& F = ImagQuadField::get(-4);
    for (int which : {0, 1}) {
        HeckeCharacter chi = base_char(4, 5, which);
        std::mt19937 rng(42 + which);
        int tested = 0;
        for (int trial = 0; trial < 200 && tested < 12; ++trial) {
            QuadInt lam{Int(1) + 3 * Int(rng() % 7), 3 * Int(rng() % 7)};
            Ideal il = Ideal::principal(F, lam);
            Ideal pid = Ideal::principal(F, QuadInt{5, 0});
            if (!il.is_coprime(pid)) continue;
            ++tested;
            CharValue lhs = chi.eval(il);
            TorsionFunction fin = chi.chi_fin(2);
            TorsionPoint t{{mod_reduce(lam.a, Int(25)).get_si(), mod_reduce(lam.b, Int(25)).get_si()}};
            ZetaPoly finv = fin.value(t);
            CharValue rhs{&F, finv, F.pow_si(QuadRat(lam), -4)};
            CHECK(lhs.equals(rhs));
        }
        CHECK(tested >= 8);
    }
}

TEST_CASE("ramified character at a split prime") {
    // Q(i), p = 5, modulus (3)(2+i): eps with a nontrivial (2+i)-component
    const auto& F = ImagQuadField::get(-4);
    auto f5 = factor_over(F, 5);
    Ideal mod = Ideal::principal(F, QuadInt{3, 0}).mul(f5[0].prime);
    auto eps = HeckeCharacter::valid_eps(F, mod, 4);
    CHECK(eps.size() == 8); // |(O/3(2+i))^x| / |units| = 32/4
    // find one whose conductor really contains the prime over 5
    bool found = false;
    for (const auto& e : eps) {
        HeckeCharacter chi(F, mod, 4, e, 5);
        if (!chi.unramified_at_p()) {
            found = true;
            CHECK(chi.p_conductor_exponents()[0] == 1);
            CHECK(chi.p_conductor_exponents()[1] == 0);
            // chi_fin at level 1 is a character of (O/(2+i))^* x trivial:
            // multiplicative on units
            TorsionFunction fin = chi.chi_fin(1);
            TorsionSpace s = fin.space();
            for (long i = 0; i < fin.size(); ++i)
                for (long j = 0; j < fin.size(); ++j) {
                    TorsionPoint a = fin.point_at(i), b = fin.point_at(j);
                    if (!fin.is_unit_point(a) || !fin.is_unit_point(b)) continue;
                    QuadInt prod = F.mul(QuadInt{Int(a.c[0]), Int(a.c[1])}, QuadInt{Int(b.c[0]), Int(b.c[1])});
                    TorsionPoint ab{{mod_reduce(prod.a, Int(5)).get_si(), mod_reduce(prod.b, Int(5)).get_si()}};
                    CHECK(fin.value(ab) == fin.value(a) * fin.value(b));
                }
            break;
        }
    }
    CHECK(found);
}

TEST_CASE("local factor: unramified gives 1, ramified is decomposition independent") {
    HeckeCharacter chi_unr = base_char(4, 5);
    auto lf = chi_unr.local_factor();
    CHECK(lf.value.is_one());

    // ramified at (2+i)
    const auto& F = ImagQuadField::get(-4);
    auto f5 = factor_over(F, 5);
    Ideal mod = Ideal::principal(F, QuadInt{3, 0}).mul(f5[0].prime);
    for (const auto& e : HeckeCharacter::valid_eps(F, mod, 4)) {
        HeckeCharacter chi(F, mod, 4, e, 5);
        if (chi.unramified_at_p()) continue;
        auto l0 = chi.local_factor(0);
        auto l1 = chi.local_factor(1);
        CHECK(!l0.c.is_zero());
        CHECK(!(l0.c == l1.c)); // genuinely different decompositions
        CHECK(l0.value.equals(l1.value));
        // brute-force oracle for F-hat(c^{-1}): F is chi_{fin,p}(s^{-1}) on
        // residues that are units at the ramified prime (and anything at the
        // other one), zero otherwise; the chi_{fin,p}-value is read off from
        // an explicitly searched CRT representative
        const Ideal& pram = f5[0].prime;
        Ideal three = Ideal::principal(F, QuadInt{3, 0});
        CBall acc(192);
        QuadRat ci = F.inv(l0.c);
        for (long b = 0; b < 5; ++b)
            for (long a = 0; a < 5; ++a) {
                QuadInt s{Int(a), Int(b)};
                if (a == 0 && b == 0) continue;
                Ideal sid = Ideal::principal(F, s);
                if (sid.val_at(pram) > 0) continue;
                // y == s mod (2+i), y == 1 mod 3(2-i): brute search
                bool got = false;
                QuadInt y;
                for (long yb = 0; yb < 15 && !got; ++yb)
                    for (long ya = 0; ya < 15 && !got; ++ya) {
                        y = QuadInt{Int(ya), Int(yb)};
                        QuadInt d1 = F.sub(y, s);
                        QuadInt d2 = F.sub(y, QuadInt{1, 0});
                        bool c1 = (d1.a == 0 && d1.b == 0) ||
                                  Ideal::principal(F, d1).val_at(pram) >= 1;
                        bool c2a = (d2.a == 0 && d2.b == 0) ||
                                   Ideal::principal(F, d2).val_at(three) >= 1;
                        bool c2b = (d2.a == 0 && d2.b == 0) ||
                                   Ideal::principal(F, d2).val_at(f5[1].prime) >= 1;
                        if (c1 && c2a && c2b) got = true;
                    }
                REQUIRE(got);
                ZetaPoly val = chi.eps_value(chi.residues().ring().reduce(y)).conj();
                QuadRat se{Rat(a), Rat(b)};
                Rat tr = F.trace(F.mul(ci, se));
                acc += val.embed(192) * unit_root(-tr, 192);
            }
        // s = 0 has valuation +infinity at the ramified prime: F(0) = 0
        acc = acc.scaled_q(Rat(1, 25));
        CBall rhs = l0.value.embed(192) * chi.eval(l0.n_ideal).embed(192) *
                    F.embed(F.pow_si(l0.c, -4), 192);
        CHECK(acc.overlaps(rhs));
        break;
    }
}

TEST_CASE("euler factor") {
    const auto& F = ImagQuadField::get(-4);
    // inert p = 7, alpha = 4, trivial finite part: 1 - 7^4/7^2 = -48
    HeckeCharacter chi7 = base_char(4, 7);
    ZetaPoly e7 = chi7.euler_factor();
    CHECK(e7.is_rational());
    CHECK(e7.to_rational() == Rat(-48));

    // split p = 5: product of the two linear factors
    HeckeCharacter chi5 = base_char(4, 5);
    ZetaPoly e5 = chi5.euler_factor();
    auto f5 = factor_over(F, 5);
    ZetaPoly byhand = ZetaPoly::from_q(Rat(1), 1);
    for (auto& pr : f5) {
        ZetaPoly t = chi5.eval(pr.prime).inv().to_cyclo();
        t.scale(Rat(1, 5));
        byhand = byhand * (ZetaPoly::from_q(Rat(1), 1) - t);
    }
    CHECK(e5 == byhand);

    // fully ramified at p: empty product
    Ideal mod5 = Ideal::principal(F, QuadInt{3, 0}).mul(f5[0].prime).mul(f5[1].prime);
    for (const auto& e : HeckeCharacter::valid_eps(F, mod5, 4)) {
        HeckeCharacter chi(F, mod5, 4, e, 5);
        if (chi.p_conductor_exponents()[0] > 0 && chi.p_conductor_exponents()[1] > 0) {
            CHECK(chi.euler_factor().to_rational() == 1);
            break;
        }
    }
}

TEST_CASE("avatar congruence and teichmuller twist") {
    const auto& F = ImagQuadField::get(-4);
    HeckeCharacter chi = base_char(4, 5);
    long N = 14;
    // principal (xi), xi == 1 mod p^n f: avatar == 1 mod p^n
    std::mt19937 rng(7);
    for (int n = 1; n <= 3; ++n) {
        long pn = 1;
        for (int i = 0; i < n; ++i) pn *= 5;
        for (int trial = 0; trial < 6; ++trial) {
            QuadInt xi{Int(1) + 3 * pn * Int(rng() % 5), 3 * pn * Int(rng() % 5)};
            Ideal ix = Ideal::principal(F, xi);
            Padic av = chi.avatar(ix, N);
            Padic one = Padic::from_int(av.ctx(), 1, N);
            CHECK(av.congruent_mod(one, n));
        }
    }
    // avatar multiplicativity against hecke_eval then iota_p
    for (int trial = 0; trial < 20; ++trial) {
        QuadInt x{Int(1 + rng() % 9), Int(rng() % 9)};
        QuadInt y{Int(rng() % 9), Int(1 + rng() % 9)};
        Ideal ix = Ideal::principal(F, x), iy = Ideal::principal(F, y);
        Ideal bad = Ideal::principal(F, QuadInt{15, 0});
        if (!ix.is_coprime(bad) || !iy.is_coprime(bad)) continue;
        CHECK(chi.avatar(ix.mul(iy), N).eq_at_common_precision(chi.avatar(ix, N) * chi.avatar(iy, N)));
        // reconstruction chi = <chi> omega_chi
        Padic w = chi.avatar_omega(ix, N);
        Padic u = chi.avatar_one_unit(ix, N);
        CHECK((w * u).eq_at_common_precision(chi.avatar(ix, N)));
        // omega has finite order dividing q-1 times a p-power; here q-1 = 4
        CHECK(w.pow_ui(4).eq_at_common_precision(Padic::from_int(w.ctx(), 1, N)));
        // <chi> is a one-unit
        CHECK(u.congruent_mod(Padic::from_int(u.ctx(), 1, N), 1));
    }
}
