#include <doctest.h>

#include <random>

#include "fourier.hpp"

using namespace eiskron;

namespace {

TorsionSpace plain(long p, int rank, int level) {
    TorsionSpace s;
    s.p = p;
    s.rank = rank;
    s.level = level;
    return s;
}

TorsionFunction random_function(const TorsionSpace& s, std::mt19937& rng, bool monomial_values) {
    TorsionFunction f(s, static_cast<unsigned>(s.pn()));
    long K = s.pn();
    for (long i = 0; i < f.size(); ++i) {
        if (rng() % 3 == 0) continue;
        Rat q(static_cast<long>(rng() % 19) - 9, 1 + rng() % 4);
        ZetaPoly v = monomial_values ? ZetaPoly::zeta(static_cast<unsigned>(K), rng() % K)
                                     : ZetaPoly::from_q(Rat(1), static_cast<unsigned>(K));
        v.scale(q);
        if (!monomial_values && rng() % 2) v += ZetaPoly::zeta(static_cast<unsigned>(K), rng() % K);
        f.set_value(f.point_at(i), v);
    }
    return f;
}

} // namespace

TEST_CASE("transform of a character is the indicator of that character") {
    TorsionSpace s = plain(3, 1, 1);
    // rho = chi_t0 as a function: rho(x) = zeta_3^{t0 * x}
    TorsionFunction rho(s, 3);
    for (long x = 0; x < 3; ++x) rho.set_value(TorsionPoint{{x, 0}}, ZetaPoly::zeta(3, 2 * x));
    auto tab = finite_fourier(rho, 1);
    for (long i = 0; i < 3; ++i) {
        Rat expect = (i == 2) ? Rat(1) : Rat(0);
        CHECK(tab.table.value_at(i) == ZetaPoly::from_q(expect, 1));
    }
}

TEST_CASE("constant function transforms to the trivial indicator") {
    TorsionSpace s = plain(5, 2, 1);
    TorsionFunction rho = TorsionFunction::constant(s, Rat(1));
    auto tab = finite_fourier(rho, 1);
    for (long i = 0; i < tab.table.size(); ++i) {
        bool trivial = tab.character_at(i).is_trivial();
        CHECK(tab.table.value_at(i) == ZetaPoly::from_q(trivial ? Rat(1) : Rat(0), 1));
    }
}

TEST_CASE("delta at zero spreads uniformly") {
    TorsionSpace s = plain(3, 1, 1);
    auto tab = finite_fourier(TorsionFunction::delta(s, TorsionPoint{{0, 0}}), 1);
    for (long i = 0; i < 3; ++i) CHECK(tab.table.value_at(i) == ZetaPoly::from_q(Rat(1, 3), 1));
}

TEST_CASE("inversion roundtrip, rank 2, p = 2, level 2") {
    std::mt19937 rng(7);
    TorsionSpace s = plain(2, 2, 2);
    for (int rep = 0; rep < 10; ++rep) {
        TorsionFunction rho = random_function(s, rng, false);
        auto tab = finite_fourier(rho, 2);
        TorsionFunction back = inverse_finite_fourier(tab);
        CHECK(back == rho.promoted_values(back.value_modulus()));
    }
    // all-zero table
    FourierTable zt{TorsionFunction(s, 4)};
    CHECK(inverse_finite_fourier(zt).is_zero());
    // indicator of the trivial character -> constant 1
    FourierTable ind{TorsionFunction::delta(s, TorsionPoint{{0, 0}})};
    TorsionFunction c1 = inverse_finite_fourier(ind);
    CHECK(c1 == TorsionFunction::constant(s, Rat(1)).promoted_values(c1.value_modulus()));
}

TEST_CASE("convolution") {
    TorsionSpace s = plain(5, 1, 1);
    auto d = [&](long x) { return TorsionFunction::delta(s, TorsionPoint{{x, 0}}); };
    CHECK(convolve(d(2), d(1)) == d(3));                       // delta_r * delta_1 = delta_{1+r}
    TorsionFunction f = convolve(d(2), d(0));
    CHECK(f == d(2));                                          // unit element
    TorsionSpace s2 = plain(2, 1, 1);
    auto dh = TorsionFunction::delta(s2, TorsionPoint{{1, 0}}); // 1/2 mod Z
    CHECK(convolve(dh, dh) == TorsionFunction::delta(s2, TorsionPoint{{0, 0}}));

    // transform sends convolution to the pointwise product
    std::mt19937 rng(11);
    TorsionSpace s3 = plain(3, 2, 1);
    TorsionFunction a = random_function(s3, rng, true);
    TorsionFunction b = random_function(s3, rng, true);
    auto ta = finite_fourier(a, 1), tb = finite_fourier(b, 1), tc = finite_fourier(convolve(a, b), 1);
    double scale = s3.points();
    for (long i = 0; i < tc.table.size(); ++i) {
        ZetaPoly prod = ta.table.value_at(i) * tb.table.value_at(i);
        prod.scale(Rat(static_cast<long>(scale)));
        CHECK(tc.table.value_at(i) == prod);
    }
}

TEST_CASE("commutativity and associativity of convolution") {
    std::mt19937 rng(13);
    TorsionSpace s = plain(2, 2, 1);
    TorsionFunction a = random_function(s, rng, true);
    TorsionFunction b = random_function(s, rng, true);
    TorsionFunction c = random_function(s, rng, true);
    CHECK(convolve(a, b) == convolve(b, a));
    CHECK(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
}

TEST_CASE("level compatibility of the transform") {
    std::mt19937 rng(17);
    TorsionSpace s = plain(3, 1, 1);
    TorsionFunction rho = random_function(s, rng, true);
    auto t1 = finite_fourier(rho, 1);
    auto t2 = finite_fourier(rho, 2); // pullback through T/9 -> T/3
    // the level-2 transform is supported on the level-1 characters (dual
    // points divisible by 3 ... i.e. inclusion image) with equal values
    TorsionFunction incl = t1.table.include_to_level(2);
    CHECK(t2.table == incl.promoted_values(t2.table.value_modulus()));
}

TEST_CASE("extend by zero") {
    TorsionSpace s = plain(3, 1, 1);
    TorsionFunction rho = TorsionFunction::constant_on_units(s, Rat(1));
    TorsionFunction j = extend_by_zero(rho);
    CHECK(j.value(TorsionPoint{{0, 0}}).is_zero());
    CHECK(j.value(TorsionPoint{{1, 0}}) == ZetaPoly::from_q(Rat(1), 1));
    CHECK(j.value(TorsionPoint{{2, 0}}) == ZetaPoly::from_q(Rat(1), 1));
    CHECK(extend_by_zero(j) == j); // support unchanged when already unit-supported
}

TEST_CASE("char_hat three-case table") {
    CHECK(char_hat(5, 0) == Rat(4, 5));
    CHECK(char_hat(5, 3) == Rat(4, 5));
    CHECK(char_hat(5, -1) == Rat(-1, 5));
    CHECK(char_hat(5, -2) == Rat(0));
    CHECK(char_hat(49, -1) == Rat(-1, 49));
}

TEST_CASE("transform of the unit indicator matches the local char_hat product") {
    // field-backed space over Z[i] at split p = 5
    const auto& F = ImagQuadField::get(-4);
    TorsionSpace s;
    s.p = 5;
    s.rank = 2;
    s.level = 1;
    s.field = &F;
    s.lattice_label = "O";
    TorsionFunction j1 = TorsionFunction::constant_on_units(s, Rat(1));
    auto tab = finite_fourier(j1, 1);
    auto primes = factor_over(F, 5);
    TorsionFunction idx(s);
    for (long i = 0; i < tab.table.size(); ++i) {
        TorsionPoint t = idx.point_at(i);
        Rat expect(1);
        if (t.c[0] == 0 && t.c[1] == 0) {
            expect = char_hat(5, 0) * char_hat(5, 0);
        } else {
            QuadRat x = idx.point_element(t); // (a + b w)/5
            Ideal xi = Ideal::principal(F, x);
            for (const auto& pr : primes) expect *= char_hat(5, xi.val_at(pr.prime));
        }
        CHECK(tab.table.value_at(i) == ZetaPoly::from_q(expect, 1));
    }
}

TEST_CASE("integrate_against") {
    TorsionSpace s = plain(3, 1, 1);
    // rho = a single character: integral picks out exactly its value
    TorsionFunction rho(s, 3);
    for (long x = 0; x < 3; ++x) rho.set_value(TorsionPoint{{x, 0}}, ZetaPoly::zeta(3, x));
    auto tab = finite_fourier(rho, 1);
    std::map<long, ZetaPoly> f;
    for (long i = 0; i < 3; ++i) f[i] = ZetaPoly::from_q(Rat(10 + i), 1);
    ZetaPoly val = integrate_against(tab, f);
    CHECK(val == ZetaPoly::from_q(Rat(11), 1)); // the dual point (1) entry

    // zero function integrates to zero with no values needed
    auto ztab = finite_fourier(TorsionFunction(s, 1), 1);
    CHECK(integrate_against(ztab, std::map<long, ZetaPoly>{}).is_zero());

    // linearity: rho = sum of two characters
    TorsionFunction rho2(s, 3);
    for (long x = 0; x < 3; ++x) {
        ZetaPoly v = ZetaPoly::zeta(3, x) + ZetaPoly::zeta(3, 2 * x);
        rho2.set_value(TorsionPoint{{x, 0}}, v);
    }
    ZetaPoly val2 = integrate_against(finite_fourier(rho2, 1), f);
    CHECK(val2 == ZetaPoly::from_q(Rat(11 + 12), 1));

    // missing value raises
    std::map<long, ZetaPoly> partial;
    CHECK_THROWS_AS((void)integrate_against(tab, partial), Error);
}

TEST_CASE("W-analyticity classifier") {
    const auto& F = ImagQuadField::get(-4);
    for (long p : {5L, 7L}) {
        long N = 20;
        AnalyticityCondition W = w_sigma(F, p, N);
        const PadicCtx& c = *F.padic_embedding(p, N).ctx;

        // trivial character: z = 1
        CharacterPoint triv{{Int(2), Int(5)}, Padic::from_int(c, 1, N)};
        CHECK(is_W_analytic(triv, W) == Analyticity::Yes);

        // z^{-alpha} in the Sigma direction
        auto d = sigma_power_differential(F, p, 4, N);
        CHECK(is_W_analytic_differential(d, W) == Analyticity::Yes);

        // inverse norm direction with a generic one-unit
        auto dn = norm_inverse_differential(F, p, N);
        CHECK(is_W_analytic_differential(dn, W) == Analyticity::No);

        // the verdict is invariant under row scaling of W
        AnalyticityCondition W2 = W;
        for (auto& row : W2.rows)
            for (auto& x : row) x = x * Padic::from_int(c, 3 + p, N);
        CHECK(is_W_analytic_differential(d, W2) == Analyticity::Yes);
        CHECK(is_W_analytic_differential(dn, W2) == Analyticity::No);
    }
}

TEST_CASE("W-analyticity integer character points at split p") {
    const auto& F = ImagQuadField::get(-4);
    long N = 20;
    AnalyticityCondition W = w_sigma(F, 5, N);
    const PadicCtx& c = *F.padic_embedding(5, N).ctx;
    // a generic integer beta with z != 1 is rejected (membership would force
    // beta parallel to (1, sigma(w)))
    CharacterPoint gen{{Int(1), Int(1)}, Padic::from_int(c, 1 + 5, N)};
    CHECK(is_W_analytic(gen, W) == Analyticity::No);
    // undecidable case: z so close to 1 that log z vanishes at precision
    CharacterPoint tight{{Int(1), Int(1)}, Padic::from_int(c, 1, 2) + Padic::zero(c, 2)};
    CHECK_THROWS_AS((void)is_W_analytic(tight, W), Error);
}

TEST_CASE("amice transform") {
    const PadicCtx& c5 = padic_ctx(5, 1);
    TorsionSpace s = plain(5, 1, 2);
    // delta_0 -> 1
    auto f0 = amice_transform(dirac_table(s, TorsionPoint{{0, 0}}), 6, 12);
    CHECK(f0.coeff[0].eq_at_common_precision(Padic::from_int(c5, 1, 12)));
    for (int k = 1; k <= 6; ++k) CHECK(f0.coeff[k].is_zero_at_precision());
    // delta_2 -> 1 + 2X + X^2
    auto f2 = amice_transform(dirac_table(s, TorsionPoint{{2, 0}}), 6, 12);
    CHECK(f2.coeff[0].eq_at_common_precision(Padic::from_int(c5, 1, 12)));
    CHECK(f2.coeff[1].eq_at_common_precision(Padic::from_int(c5, 2, 12)));
    CHECK(f2.coeff[2].eq_at_common_precision(Padic::from_int(c5, 1, 12)));
    CHECK(f2.coeff[3].is_zero_at_precision());

    // algebra map: F(mu * nu) = F(mu) F(nu) up to degree D
    std::mt19937 rng(23);
    TorsionSpace s1 = plain(3, 2, 1);
    DistributionTable mu{s1, {}}, nu{s1, {}};
    for (long i = 0; i < s1.points(); ++i) {
        mu.mass.push_back(Rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3));
        nu.mass.push_back(Rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3));
    }
    auto fm = amice_transform(mu, 5, 14);
    auto fn = amice_transform(nu, 5, 14);
    auto fc = amice_transform(convolve_tables(mu, nu), 5, 14);
    CHECK(amice_equal(fc, amice_multiply(fm, fn)));

    // pairing against characters matches series evaluation
    const PadicCtx& c3 = padic_ctx(3, 1);
    CharacterPoint chi{{Int(2), Int(1)}, Padic::from_int(c3, 1 + 3, 14)};
    Padic direct = amice_pair(mu, chi, 14);
    auto fbig = amice_transform(mu, 24, 14);
    Padic via = amice_eval(fbig, chi);
    CHECK(direct.congruent_mod(via, 10));

    // refining the table does not change the truncated series (at the
    // precision the level supports)
    DistributionTable fine = refine_table(mu);
    auto ff = amice_transform(fine, 5, 14);
    for (int i = 0; i < 3; ++i)
        CHECK(fm.coeff[fm.index(i, 0)].congruent_mod(ff.coeff[ff.index(i, 0)], 1));
    // and the masses refine consistently
    TorsionFunction idxc(s1), idxf(fine.space);
    for (long i = 0; i < s1.points(); ++i) {
        Rat sum(0);
        for (long j = 0; j < fine.space.points(); ++j) {
            TorsionPoint tf = idxf.point_at(j);
            TorsionPoint tc{{tf.c[0] % s1.pn(), tf.c[1] % s1.pn()}};
            if (idxc.index_of(tc) == i) sum += fine.mass[j];
        }
        CHECK(sum == mu.mass[i]);
    }
}
