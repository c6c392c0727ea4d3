#include <doctest.h>

#include <cmath>

#include "cyclotomic.hpp"

using namespace eiskron;

TEST_CASE("cyclotomic basics") {
    // zeta_5 satisfies 1 + z + z^2 + z^3 + z^4 = 0
    ZetaPoly s(5);
    for (long j = 0; j < 5; ++j) s += ZetaPoly::zeta(5, j);
    CHECK(s.is_zero());

    ZetaPoly z = ZetaPoly::zeta(12, 1);
    CHECK((z * z.conj()).to_rational() == 1);

    // sqrt(-1) inside Q(zeta_12): zeta_12^3
    ZetaPoly i = ZetaPoly::zeta(12, 3);
    CHECK((i * i).to_rational() == -1);

    // sqrt(-2) = zeta_8 + zeta_8^3
    ZetaPoly r = ZetaPoly::zeta(8, 1) + ZetaPoly::zeta(8, 3);
    CHECK((r * r).to_rational() == -2);
}

TEST_CASE("inverse and division") {
    ZetaPoly x = ZetaPoly::zeta(7, 3) + ZetaPoly::from_q(Rat(2, 5), 7);
    ZetaPoly y = x * x.inv();
    CHECK(y.to_rational() == 1);

    ZetaPoly a = ZetaPoly::zeta(9, 2);
    a.scale(Rat(3, 4));
    ZetaPoly b = ZetaPoly::zeta(9, 7) - ZetaPoly::from_q(Rat(1), 9);
    ZetaPoly q = a / b;
    CHECK((q * b) == a);
}

TEST_CASE("promotion and mixed moduli") {
    ZetaPoly a = ZetaPoly::zeta(4, 1);  // i
    ZetaPoly b = ZetaPoly::zeta(3, 1);  // omega
    ZetaPoly p = a * b;                 // zeta_12^7
    CHECK(p == ZetaPoly::zeta(12, 7));
    CHECK(p.modulus() == 12);
}

TEST_CASE("galois and rationality") {
    ZetaPoly z = ZetaPoly::zeta(16, 1);
    ZetaPoly tr(16);
    for (long j : {1, 3, 5, 7, 9, 11, 13, 15}) tr += z.galois(j);
    CHECK(tr.is_rational());
    CHECK(tr.to_rational() == 0);

    // norm of 1 - zeta_p is p
    ZetaPoly n = ZetaPoly::from_q(Rat(1), 5) - ZetaPoly::zeta(5, 1);
    ZetaPoly prod = ZetaPoly::from_q(Rat(1), 5);
    for (long j : {1, 2, 3, 4}) prod = prod * n.galois(j);
    CHECK(prod.to_rational() == 5);
}

TEST_CASE("complex embedding matches") {
    ZetaPoly z = ZetaPoly::zeta(12, 1);
    CBall e = z.embed(128);
    CHECK(std::fabs(e.mid_re_d() - std::cos(M_PI / 6)) < 1e-15);
    CHECK(std::fabs(e.mid_im_d() - std::sin(M_PI / 6)) < 1e-15);
    CHECK(e.rad() < 1e-30);
}
