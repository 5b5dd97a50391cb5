#include "doctest.h"

#include "modparam/taniyama.hpp"

using namespace modparam;

static void check_taniyama_identities(const EllipticCurve& E, long M) {
    QQ rg;
    auto T = taniyama_series(E, M);
    CHECK(T.xq.val == -2);
    CHECK(T.xq.coeff(-2) == 1);
    CHECK(T.yq.val == -3);
    CHECK(T.yq.coeff(-3) == -1);

    // curve equation residual vanishes to the justified precision
    auto res = curve_equation_residual(rg, E, T.xq, T.yq);
    CHECK(res.prec >= M - 6);
    CHECK(series_is_zero_to_prec(res));

    // differential pullback: q dx/dq = f (2y + a1 x + a3)
    NewformSeries an = an_sequence(E, M + 8);
    auto f = newform_q_series(rg, an, M + 4);
    auto rhs = series_scale(T.yq, mpq_class(2));
    rhs = series_add(rhs, series_scale(T.xq, mpq_class(E.a1)));
    rhs = series_add(rhs, LaurentSeries<QQ>::monomial(rg, mpq_class(E.a3), 0, T.xq.prec));
    rhs = series_mul(f, rhs);
    auto diff = series_sub(series_qdq(T.xq), rhs);
    CHECK(series_is_zero_to_prec(diff));
}

TEST_CASE("taniyama series identities for several curves") {
    check_taniyama_identities(EllipticCurve(0, -1, 1, -10, -20, 11, "11a1"), 60);
    check_taniyama_identities(EllipticCurve(0, 0, 1, -1, 0, 37, "37a1"), 50);
    check_taniyama_identities(EllipticCurve(1, 0, 1, 9, 90, 38, "38a1"), 50);
    check_taniyama_identities(EllipticCurve(0, 0, 0, -7, -6, 40, "40a1"), 50);
}

TEST_CASE("integrality of x(q) for optimal curves (observed property)") {
    auto T = taniyama_series(EllipticCurve(0, -1, 1, -10, -20, 11, "11a1"), 80);
    for (long n = -2; n <= T.xq.prec; ++n) {
        mpq_class c = T.xq.coeff(n);
        CHECK(c.get_den() == 1);
    }
}

TEST_CASE("taniyama mod p matches exact") {
    EllipticCurve E(0, 0, 1, -1, 0, 37, "37a1");
    NewformSeries an = an_sequence(E, 70);
    Fp rg(PrimeStream().next());
    auto Tz = taniyama_series_ring(rg, E, an, 40);
    auto Tq = taniyama_series(E, 40);
    for (long n = -2; n <= 40; ++n)
        CHECK(Tz.xq.coeff(n) == rg.from_mpq(Tq.xq.coeff(n)));
    for (long n = -3; n <= 40; ++n)
        CHECK(Tz.yq.coeff(n) == rg.from_mpq(Tq.yq.coeff(n)));
}

TEST_CASE("taniyama rejects bad precision") {
    EllipticCurve E(0, -1, 1, -10, -20, 11);
    CHECK_THROWS_AS(taniyama_series(E, 0), bad_input);
}
