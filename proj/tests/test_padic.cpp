#include <doctest.h>

#include <random>

#include "padic.hpp"

using namespace eiskron;

TEST_CASE("basic arithmetic and precision") {
    const auto& c5 = padic_ctx(5, 1);
    // (1+5)(1-5) = -24 = 101 mod 125
    Padic a = Padic::from_int(c5, 6, 3);
    Padic b = Padic::from_int(c5, -4, 3);
    Padic p = a * b;
    CHECK(p.eq_at_common_precision(Padic::from_int(c5, 101, 3)));

    // 1/2 at N=2 is 13 mod 25
    Padic h = Padic::from_int(c5, 1, 2) / Padic::from_int(c5, 2, 2);
    CHECK(h.eq_at_common_precision(Padic::from_int(c5, 13, 2)));

    const auto& c3 = padic_ctx(3, 1);
    Padic x = Padic::from_rat(c3, Rat(7, 5), 8);
    CHECK((x + (-x)).is_zero_at_precision());
}

TEST_CASE("division precision bookkeeping") {
    const auto& c = padic_ctx(5, 1);
    Padic x = Padic::from_int(c, 7, 10);       // O(5^10)
    Padic y = Padic::from_int(c, 25 * 3, 10);  // val 2, rel prec 8
    Padic q = x / y;
    CHECK(q.valuation() == -2);
    CHECK(q.abs_precision() == 6); // -2 + min(10, 8)
    Padic z = Padic::zero(c, 4);
    CHECK_THROWS_AS((void)(x / z), Error);
}

TEST_CASE("teichmuller") {
    const auto& c = padic_ctx(5, 1);
    CHECK(teichmuller(Padic::from_int(c, 1, 6)).eq_at_common_precision(Padic::from_int(c, 1, 6)));
    Padic w2 = teichmuller(Padic::from_int(c, 2, 2));
    CHECK(w2.eq_at_common_precision(Padic::from_int(c, 7, 2)));
    // defining property over the quadratic extension
    const auto& c2 = padic_ctx(5, 2);
    Padic x = Padic::from_unit_coeffs(c2, {Int(3), Int(4)}, 0, 8);
    Padic t = teichmuller(x);
    CHECK(t.pow_ui(24).eq_at_common_precision(Padic::from_int(c2, 1, 8)));
    CHECK((t - x).valuation() >= 1);
    CHECK_THROWS_AS((void)teichmuller(Padic::from_int(c, 10, 4)), Error);
}

TEST_CASE("log and exp") {
    const auto& c = padic_ctx(5, 1);
    CHECK(plog(Padic::from_int(c, 1, 6)).is_zero_at_precision());

    Padic u = Padic::from_int(c, 6, 4); // 1+5
    Padic l = plog(u);
    Padic back = pexp(l);
    CHECK(back.eq_at_common_precision(Padic::from_int(c, 6, 4)));

    // homomorphism: log(u^3) = 3 log(u)
    Padic l3 = plog(u.pow_ui(3));
    CHECK(l3.eq_at_common_precision(l * Padic::from_int(c, 3, 4)));

    // convergence domain errors
    CHECK_THROWS_AS((void)pexp(Padic::from_int(c, 2, 4)), Error);
    const auto& c2p = padic_ctx(2, 1);
    CHECK_THROWS_AS((void)pexp(Padic::from_int(c2p, 2, 6)), Error);
    CHECK_NOTHROW((void)pexp(Padic::from_int(c2p, 4, 6)));

    // general unit via teichmuller projection
    Padic g = Padic::from_int(c, 7, 6);
    Padic lg = plog(g, false);
    CHECK(pexp(lg).eq_at_common_precision(g / teichmuller(g)));
}

TEST_CASE("randomized ring axioms at fixed precision") {
    std::mt19937 rng(1234);
    for (int deg = 1; deg <= 2; ++deg) {
        const auto& c = padic_ctx(deg == 1 ? 7 : 5, deg);
        long N = 12;
        auto rnd = [&]() {
            Int a = rng(), b = rng();
            std::array<Int, 2> u{a, deg == 2 ? b : Int(0)};
            long val = static_cast<long>(rng() % 5) - 2;
            return Padic::from_unit_coeffs(c, u, val, val + N);
        };
        for (int i = 0; i < 200; ++i) {
            Padic x = rnd(), y = rnd(), z = rnd();
            CHECK(((x + y) + z).eq_at_common_precision(x + (y + z)));
            CHECK(((x * y) * z).eq_at_common_precision(x * (y * z)));
            CHECK((x * (y + z)).eq_at_common_precision(x * y + x * z));
            CHECK((x * y).eq_at_common_precision(y * x));
            if (!x.is_zero_at_precision()) {
                Padic q = (x * y) / x;
                CHECK(q.eq_at_common_precision(y));
            }
        }
    }
}

TEST_CASE("teichmuller multiplicativity randomized") {
    std::mt19937 rng(99);
    const auto& c = padic_ctx(5, 2);
    for (int i = 0; i < 100; ++i) {
        std::array<Int, 2> a{Int(rng() % 1000000), Int(rng() % 1000000)};
        std::array<Int, 2> b{Int(rng() % 1000000), Int(rng() % 1000000)};
        Padic x = Padic::from_unit_coeffs(c, a, 0, 10);
        Padic y = Padic::from_unit_coeffs(c, b, 0, 10);
        if (x.is_zero_at_precision() || y.is_zero_at_precision()) continue;
        if (x.valuation() != 0 || y.valuation() != 0) continue;
        CHECK(teichmuller(x * y).eq_at_common_precision(teichmuller(x) * teichmuller(y)));
    }
}

TEST_CASE("quadratic roots and zeta system") {
    const auto& c = padic_ctx(5, 1);
    // w = sqrt(-1): roots of y^2 + 1
    auto roots = padic_quadratic_roots(c, 0, 1, 8);
    REQUIRE(roots.size() == 2);
    CHECK((roots[0] * roots[0] + Padic::from_int(c, 1, 8)).is_zero_at_precision());

    const auto& c2 = padic_ctx(7, 2);
    Padic z8 = padic_zeta(c2, 8, 10);
    CHECK(z8.pow_ui(8).eq_at_common_precision(Padic::from_int(c2, 1, 10)));
    CHECK(!z8.pow_ui(4).eq_at_common_precision(Padic::from_int(c2, 1, 10)));

    // compatibility: zeta_K^(K/m) = zeta_m
    Padic z48 = padic_zeta(c2, 48, 10);
    CHECK(z48.pow_ui(6).eq_at_common_precision(z8));

    // embedding a cyclotomic integer
    ZetaPoly r = ZetaPoly::zeta(8, 1) + ZetaPoly::zeta(8, 3); // sqrt(-2)
    Padic rp = padic_embed(r, c2, 10);
    CHECK((rp * rp).eq_at_common_precision(Padic::from_int(c2, -2, 10)));
}
