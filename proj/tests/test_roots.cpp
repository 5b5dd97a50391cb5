#include "doctest.h"

#include "modparam/roots.hpp"

using namespace modparam;

TEST_CASE("complex_roots simple cases") {
    // x^2 + 1 -> {i, -i}
    auto r = complex_roots(UniPoly::from_si({1, 0, 1}), 128);
    REQUIRE(r.size() == 2);
    for (auto& cr : r) {
        CHECK(std::abs(cr.z.re.to_double()) < 1e-30);
        CHECK(std::abs(std::abs(cr.z.im.to_double()) - 1.0) < 1e-30);
        CHECK(cr.multiplicity == 1);
        CHECK(cr.radius < Real::pow2(-64, 64));
    }

    // (x-1)^2 -> {1 with multiplicity 2}
    auto r2 = complex_roots(UniPoly::from_si({1, -2, 1}), 128);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].multiplicity == 2);
    CHECK(std::abs(r2[0].z.re.to_double() - 1.0) < 1e-30);

    CHECK_THROWS_AS(complex_roots(UniPoly::constant(7), 128), bad_input);
}

TEST_CASE("complex_roots: counts, ball contains zero") {
    // (x+3375)^2 * (x^2 - 2) * (5x - 1)
    UniPoly h7 = UniPoly::from_si({3375, 1});
    UniPoly P = h7 * h7 * UniPoly::from_si({-2, 0, 1}) * UniPoly::from_si({-1, 5});
    auto roots = complex_roots(P, 192);
    long total = 0;
    for (auto& cr : roots) total += cr.multiplicity;
    CHECK(total == P.degree());

    // evaluating P at each returned ball contains 0
    for (auto& cr : roots) {
        long prec = cr.z.prec();
        CBall z(prec);
        z = CBall(cr.z, cr.radius);
        CBall acc = CBall::exact(Cplx(Real::of_mpz(P.lc(), prec), Real::of_si(0, prec)));
        for (long i = P.degree(); i-- > 0;)
            acc = acc * z + CBall::exact(Cplx(Real::of_mpz(P.coeff(i), prec), Real::of_si(0, prec)));
        CHECK(acc.contains_zero());
    }
}

TEST_CASE("aberth on complex coefficients with clustering") {
    long prec = 192;
    // (z - (2+i))^2 (z + 1) expanded: coefficients complex
    Cplx a = Cplx::of_si(2, 1, prec);
    // p(z) = (z^2 - 2az + a^2)(z+1)
    std::vector<Cplx> c(4, Cplx(prec));
    Cplx one = Cplx::of_si(1, 0, prec);
    Cplx a2 = a * a;
    // z^3 + (1-2a) z^2 + (a^2-2a) z + a^2
    c[3] = one;
    c[2] = one - (a + a);
    c[1] = a2 - (a + a);
    c[0] = a2;
    auto cl = clustered_roots(c, prec, Real::pow2(-40, 64));
    REQUIRE(cl.size() == 2);
    int doubled = 0;
    for (auto& cr : cl) {
        if (cr.count == 2) {
            ++doubled;
            CHECK(std::abs(cr.z.re.to_double() - 2.0) < 1e-8);
            CHECK(std::abs(cr.z.im.to_double() - 1.0) < 1e-8);
        } else {
            CHECK(std::abs(cr.z.re.to_double() + 1.0) < 1e-8);
        }
    }
    CHECK(doubled == 1);
}
