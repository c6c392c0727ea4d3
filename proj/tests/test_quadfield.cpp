#include <doctest.h>

#include "quadfield.hpp"

using namespace eiskron;

TEST_CASE("gaussian integers basics") {
    const auto& F = ImagQuadField::get(-4);
    // N(1+i) = 2
    Ideal I = Ideal::principal(F, QuadInt{1, 1});
    CHECK(I.norm_z() == 2);
    CHECK(F.num_units() == 4);

    Ideal a = Ideal::principal(F, QuadInt{3, 2});
    Ideal prod = a.mul(a.inverse());
    CHECK(prod.equals(Ideal::one(F)));

    // canonical generator is associate-independent
    Ideal b = Ideal::principal(F, F.mul(QuadInt{3, 2}, QuadInt{0, 1}));
    CHECK(a.equals(b));
}

TEST_CASE("splitting of rational primes in Q(i)") {
    const auto& F = ImagQuadField::get(-4);
    auto f5 = factor_over(F, 5);
    REQUIRE(f5.size() == 2);
    CHECK(f5[0].f == 1);
    CHECK(f5[0].prime.norm_z() == 5);
    CHECK(f5[1].prime.norm_z() == 5);
    CHECK(f5[0].prime.mul(f5[1].prime).equals(Ideal::principal(F, QuadInt{5, 0})));
    // the iota_p-distinguished prime has positive valuation under embed_p
    auto emb = F.padic_embedding(5, 10);
    CHECK(emb.split);
    Padic im = F.embed_p(f5[0].prime.gen(), emb, 10);
    CHECK(im.valuation() >= 1);

    auto f7 = factor_over(F, 7);
    REQUIRE(f7.size() == 1);
    CHECK(f7[0].f == 2);

    CHECK_THROWS_AS(factor_over(F, 2), Error); // ramified
}

TEST_CASE("valuations and coprimality") {
    const auto& F = ImagQuadField::get(-4);
    auto f5 = factor_over(F, 5);
    Ideal p1 = f5[0].prime, p2 = f5[1].prime;
    Ideal x = p1.pow(3).mul(p2.inverse());
    CHECK(x.val_at(p1) == 3);
    CHECK(x.val_at(p2) == -1);
    CHECK(p1.is_coprime(p2));
    Ideal five = Ideal::principal(F, QuadInt{5, 0});
    CHECK(!p1.is_coprime(five));
    CHECK(five.val_at(p1) == 1);
}

TEST_CASE("p-adic embedding of the field") {
    const auto& F = ImagQuadField::get(-4);
    // split: w = i -> element of Z_5 with square -1
    auto e5 = F.padic_embedding(5, 12);
    Padic i5 = e5.w_image;
    CHECK((i5 * i5 + Padic::from_int(*e5.ctx, 1, 12)).is_zero_at_precision());
    // inert: lives in the quadratic extension
    auto e7 = F.padic_embedding(7, 10);
    CHECK(!e7.split);
    CHECK(e7.ctx->deg == 2);
    Padic i7 = e7.w_image;
    CHECK((i7 * i7 + Padic::from_int(*e7.ctx, 1, 10)).is_zero_at_precision());
    // embedding is a ring map
    QuadRat x(Rat(2), Rat(3)), y(Rat(-1, 2), Rat(5));
    Padic px = F.embed_p(x, e7, 10), py = F.embed_p(y, e7, 10);
    CHECK(F.embed_p(F.mul(x, y), e7, 10).eq_at_common_precision(px * py));
}

TEST_CASE("cyclotomic model of the field") {
    for (long d : {-3L, -4L, -7L, -8L, -11L}) {
        const auto& F = ImagQuadField::get(d);
        QuadRat w(Rat(0), Rat(1));
        ZetaPoly wz = F.to_cyclo(w);
        // w satisfies w^2 - tr w + nm = 0
        ZetaPoly lhs = wz * wz - wz.galois(1).scale(Rat(F.trw())) + ZetaPoly::from_q(Rat(F.nmw()), 1);
        CHECK(lhs.is_zero());
        // complex images agree
        CBall a = F.embed(w, 128);
        CBall b = wz.embed(128);
        CHECK(a.dist_upper(b) < 1e-30);
    }
}

TEST_CASE("residue rings and unit groups") {
    const auto& F = ImagQuadField::get(-4);
    Ideal three = Ideal::principal(F, QuadInt{3, 0});
    ResidueUnits U(F, three);
    CHECK(U.size() == 8);
    CHECK(U.basis().exponent() == 8); // (Z[i]/3)^* is cyclic of order 8

    // ray class group mod (3): order 2
    RayClassData ray(F, three, UnitsMode::GlobalUnits);
    CHECK(ray.order() == 2);
    auto reps = ray.representatives(Ideal::principal(F, QuadInt{35, 0}));
    REQUIRE(reps.size() == 2);
    for (const auto& r : reps) {
        CHECK(r.is_integral());
        CHECK(r.is_coprime(three));
        CHECK(r.is_coprime(Ideal::principal(F, QuadInt{35, 0})));
    }
    CHECK(ray.class_of(reps[0]) != ray.class_of(reps[1]));
    // (1+i) is a nontrivial ray class mod 3, (2) is trivial
    CHECK(ray.class_of(Ideal::principal(F, QuadInt{1, 1})) !=
          ray.class_of(Ideal::one(F)));
    CHECK(ray.class_of(Ideal::principal(F, QuadInt{2, 0})) ==
          ray.class_of(Ideal::one(F)));

    // trivial modulus
    RayClassData triv(F, Ideal::one(F), UnitsMode::GlobalUnits);
    CHECK(triv.order() == 1);
}

TEST_CASE("Q(sqrt-3) mod 2 ray class group is trivial") {
    const auto& F = ImagQuadField::get(-3);
    Ideal two = Ideal::principal(F, QuadInt{2, 0});
    ResidueUnits U(F, two);
    CHECK(U.size() == 3); // 2 inert, F_4^*
    RayClassData ray(F, two, UnitsMode::GlobalUnits);
    CHECK(ray.order() == 1);
}

TEST_CASE("ray class order formula for small moduli") {
    // order = |(O/m)^*| / |image of units| for h = 1
    const auto& F = ImagQuadField::get(-4);
    for (long m : {3L, 7L, 9L, 11L, 13L}) {
        Ideal mI = Ideal::principal(F, QuadInt{m, 0});
        ResidueUnits U(F, mI);
        RayClassData ray(F, mI, UnitsMode::GlobalUnits);
        // image of the 4 units
        std::vector<int> img;
        for (const QuadInt& u : F.units()) img.push_back(U.index_of(U.ring().reduce(u)));
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        CHECK(ray.order() * static_cast<long>(img.size()) == U.size());
    }
}

TEST_CASE("class number gate") {
    const auto& F = ImagQuadField::get(-15); // h = 2
    Ideal m = Ideal::principal(F, QuadInt{7, 0});
    CHECK_THROWS_AS(RayClassData(F, m, UnitsMode::GlobalUnits), Error);
}
