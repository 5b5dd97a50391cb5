#include "doctest.h"

#include "modparam/qexp.hpp"

using namespace modparam;

TEST_CASE("j-series coefficients") {
    auto j = j_series(3);
    CHECK(j.val == -1);
    CHECK(j.coeff(-1) == 1);
    CHECK(j.coeff(0) == 744);
    CHECK(j.coeff(1) == 196884);
    CHECK(j.coeff(2) == 21493760);
    CHECK(j.coeff(3) == 864299970);

    auto j0 = j_series(0);
    CHECK(j0.prec == 0);
    CHECK(j0.coeff(-1) == 1);
    CHECK(j0.coeff(0) == 744);

    CHECK_THROWS_AS(j_series(-1), bad_input);
}

TEST_CASE("j-series mod p agrees with exact") {
    Fp rg(PrimeStream().next());
    REQUIRE(is_prime_u64(rg.p));
    auto jz = j_series_ring(rg, 40);
    auto jq = j_series(40);
    for (long n = -1; n <= 40; ++n) {
        mpq_class c = jq.coeff(n);
        CHECK(jz.coeff(n) == rg.from_mpq(c));
    }
}

TEST_CASE("generalized eta series") {
    // N=46, g=16: first factors (1-q^16)(1-q^30): q-part starts 1 - q^16
    auto e = generalized_eta_series(46, 16, 17);
    CHECK(e.qpart.coeff(0) == 1);
    for (long n = 1; n <= 15; ++n) CHECK(e.qpart.coeff(n) == 0);
    CHECK(e.qpart.coeff(16) == -1);

    // N=46, g=1, M=46: product of (1-q)(1-q^45) mod q^47
    auto e1 = generalized_eta_series(46, 1, 46);
    CHECK(e1.qpart.coeff(0) == 1);
    CHECK(e1.qpart.coeff(1) == -1);
    for (long n = 2; n <= 44; ++n) CHECK(e1.qpart.coeff(n) == 0);
    CHECK(e1.qpart.coeff(45) == -1);
    CHECK(e1.qpart.coeff(46) == 1);

    // exponent tag: N*B2(g/N)/2
    auto e2 = generalized_eta_series(46, 16, 3);
    mpq_class t(16, 46);
    mpq_class expct = mpq_class(46) * (t * t - t + mpq_class(1, 6)) / 2;
    expct.canonicalize();
    CHECK(e2.exponent == expct);

    CHECK_THROWS_AS(generalized_eta_series(46, 0, 5), bad_input);
    CHECK_THROWS_AS(generalized_eta_series(46, 46, 5), bad_input);
}

TEST_CASE("eta quotient: Dedekind eta product for Delta") {
    // eta(tau)^24 = Delta
    auto d1 = eta_quotient_series(QQ{}, {{1, 24}}, 12);
    auto d2 = delta_series(QQ{}, 12);
    for (long n = 1; n <= 12; ++n) CHECK(d1.coeff(n) == d2.coeff(n));
    // tau(2) = -24, tau(3) = 252
    CHECK(d1.coeff(2) == -24);
    CHECK(d1.coeff(3) == 252);
}
