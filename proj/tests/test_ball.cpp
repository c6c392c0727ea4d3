#include <doctest.h>

#include <cmath>

#include "ball.hpp"

using namespace eiskron;

TEST_CASE("ball arithmetic encloses exact values") {
    mpfr_prec_t P = 128;
    CBall a = CBall::from_q(Rat(1, 3), Rat(2, 7), P);
    CBall b = CBall::from_q(Rat(-5, 11), Rat(1, 13), P);
    CBall s = a + b;
    double re = 1.0 / 3 - 5.0 / 11, im = 2.0 / 7 + 1.0 / 13;
    CHECK(std::fabs(s.mid_re_d() - re) < 1e-15);
    CHECK(std::fabs(s.mid_im_d() - im) < 1e-15);
    CHECK(s.rad() < 1e-30);

    CBall p = a * b;
    CBall q = p / b;
    CHECK(q.dist_upper(a) < 1e-30);
}

TEST_CASE("pow and sqrt") {
    mpfr_prec_t P = 160;
    CBall z = CBall::from_q(Rat(3, 2), Rat(-1, 4), P);
    CBall z6 = z.pow_ui(6);
    CBall w = z * z * z * z * z * z;
    CHECK(z6.overlaps(w));

    CBall r = z6.sqrt();
    CBall r2 = r * r;
    CHECK(r2.overlaps(z6));

    CBall neg = CBall::from_long(-4, P);
    CBall sn = neg.sqrt(); // principal: 2i
    CHECK(std::fabs(sn.mid_re_d()) < 1e-30);
    CHECK(std::fabs(sn.mid_im_d() - 2.0) < 1e-30);
}

TEST_CASE("unit roots") {
    mpfr_prec_t P = 128;
    CBall z = unit_root(Rat(1, 8), P); // e^{i pi/4}
    double c = std::sqrt(0.5);
    CHECK(std::fabs(z.mid_re_d() - c) < 1e-15);
    CHECK(std::fabs(z.mid_im_d() - c) < 1e-15);
    CBall z8 = z.pow_ui(8);
    CHECK(std::fabs(z8.mid_re_d() - 1.0) < 1e-30);
    CHECK(z8.rad() < 1e-25);
}
