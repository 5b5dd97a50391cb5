#include "doctest.h"

#include "modparam/modpoly.hpp"

using namespace modparam;

// the printed F_11(x, j): (16-x)^11 j^2 + (linear block) j + (quartic)^3
static BivarPoly expected_F11() {
    UniPoly m16 = UniPoly::from_si({16, -1});
    UniPoly j2 = m16;
    for (int i = 1; i < 11; ++i) j2 = j2 * m16;
    UniPoly j1;
    j1.c = {mpz_class("-104748564078368391"), mpz_class("199736619430410535"),
            mpz_class("159480622275659333"), mpz_class("6839041777752481"),
            mpz_class("-29669709666741936"), mpz_class("-4074814667347831"),
            mpz_class("1134855511654843"),   mpz_class("164063633585170"),
            mpz_class("5072626276355"),      mpz_class("38323813979"),
            mpz_class("43119747"),           mpz_class("1486")};
    j1.normalize();
    UniPoly q = UniPoly::from_si({9789217, 4971236, 1333262, -52820, 1});
    UniPoly j0 = q * q * q;
    BivarPoly P(12, 2);
    for (long k = 0; k <= 12; ++k) {
        P.at(k, 2) = j2.coeff(k);
        P.at(k, 1) = j1.coeff(k);
        P.at(k, 0) = j0.coeff(k);
    }
    return P;
}

static BivarPoly expected_f11() {
    UniPoly J2 = UniPoly::from_si({16, -1});
    UniPoly J1 = UniPoly::from_si({6969, 5732, -12529, -6105, 1309, 297, -22});
    UniPoly q = UniPoly::from_si({97, 116, 62, -20, 1});
    UniPoly J0 = q * q * q;
    BivarPoly P(12, 2);
    for (long k = 0; k <= 12; ++k) {
        P.at(k, 2) = J2.coeff(k);
        P.at(k, 1) = J1.coeff(k);
        P.at(k, 0) = J0.coeff(k);
    }
    return P;
}

TEST_CASE("F_11 and f_11 match the printed polynomials exactly") {
    CurveContext ctx(EllipticCurve(0, -1, 1, -10, -20, 11, "11a1"));
    ModularPolynomial F = build_modular_polynomial(ctx, PolyKind::F);
    CHECK(F.K == 12);
    CHECK(F.L == 2);
    BivarPoly expF = expected_F11();
    REQUIRE(F.poly.K == expF.K);
    REQUIRE(F.poly.L == expF.L);
    for (long k = 0; k <= 12; ++k)
        for (long l = 0; l <= 2; ++l) CHECK(F.poly.at(k, l) == expF.at(k, l));

    ModularPolynomial f = build_modular_polynomial(ctx, PolyKind::f);
    CHECK(f.K == 12);
    CHECK(f.L == 2);
    BivarPoly expf = expected_f11();
    for (long k = 0; k <= 12; ++k)
        for (long l = 0; l <= 2; ++l) CHECK(f.poly.at(k, l) == expf.at(k, l));

    // leading blocks
    CHECK(leading_coeff_in_x(F) == UniPoly::constant(1)); // A_12(j) = 1
    CHECK(leading_coeff_in_j(F).degree() == 11);          // B_2(x) = (16 - x)^11
}

TEST_CASE("G_11 and g_11 build and the relations vanish") {
    CurveContext ctx(EllipticCurve(0, -1, 1, -10, -20, 11, "11a1"));
    ModularPolynomial G = build_modular_polynomial(ctx, PolyKind::G);
    CHECK(G.K <= 12);
    CHECK(G.L <= 3);
    ModularPolynomial g = build_modular_polynomial(ctx, PolyKind::g);
    CHECK(g.K <= 12);
    // exact re-verification at a larger precision than the build used
    CHECK(detail::relation_vanishes_exact(ctx, PolyKind::G, G.poly, G.precision_used));
    CHECK(detail::relation_vanishes_exact(ctx, PolyKind::g, g.poly, g.precision_used));
}

TEST_CASE("taniyama x(q) against F_11 (paper relation)") {
    CurveContext ctx(EllipticCurve(0, -1, 1, -10, -20, 11, "11a1"));
    BivarPoly F = expected_F11();
    ctx.ensure_an(80);
    CHECK(detail::relation_vanishes_exact(ctx, PolyKind::F, F, 60));
}

TEST_CASE("the Algorithm-1 system for 11a1 via rational_nullspace") {
    // exact rational matrix of the (K, L) = (12, 2) system
    CurveContext ctx(EllipticCurve(0, -1, 1, -10, -20, 11, "11a1"));
    long K = 12, L = 2;
    long mpos = detail::required_mpos(PolyKind::F, 11, K, L, 24);
    long depth = mpos + 2 * K + L;
    ctx.ensure_an(depth + 16);
    QQ rg;
    auto T = taniyama_series_ring(rg, ctx.E, ctx.an, depth + 1);
    auto x = T.xq;
    auto j = j_series(depth);
    long n_min = -(2 * K + L);
    long rows = mpos - n_min + 1, cols = (K + 1) * (L + 1);
    RationalMatrix M(rows, cols);
    LaurentSeries<QQ> xk = LaurentSeries<QQ>::one(rg, depth + 2);
    for (long k = 0; k <= K; ++k) {
        if (k) xk = series_mul(xk, x);
        LaurentSeries<QQ> cur = xk;
        for (long l = 0; l <= L; ++l) {
            if (l) cur = series_mul(cur, j);
            REQUIRE(cur.prec >= mpos);
            for (long n = std::max(cur.val, n_min); n <= mpos; ++n)
                M.at(n - n_min, k * (L + 1) + l) = cur.coeff(n);
        }
    }
    auto ker = rational_nullspace(M);
    REQUIRE(ker.size() == 1);
    // normalize to a primitive integer vector with the sign rule and check
    // the coefficient 1486 on x^11 j
    mpz_class lcm = 1;
    for (auto& q : ker[0]) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    BivarPoly P(K, L);
    for (long k = 0; k <= K; ++k)
        for (long l = 0; l <= L; ++l) {
            mpq_class c = ker[0][(size_t)(k * (L + 1) + l)] * mpq_class(lcm);
            c.canonicalize();
            P.at(k, l) = c.get_num();
        }
    P.normalize_content_sign();
    CHECK(P.at(11, 1) == 1486);
}

TEST_CASE("40a1 halving: K = 36 = mu/2, L = 2 = d") {
    CurveContext ctx(EllipticCurve(0, 0, 0, -7, -6, 40, "40a1"));
    ModularPolynomial F = build_modular_polynomial(ctx, PolyKind::F);
    CHECK(F.K == 36);
    CHECK(F.L == 2);
    CHECK(detail::relation_vanishes_exact(ctx, PolyKind::F, F.poly, F.precision_used));
}

TEST_CASE("degree_bounds facade") {
    auto b = degree_bounds(EllipticCurve(1, 0, 1, 9, 90, 38, "38a1"), 6);
    CHECK(b.mu == 60);
    CHECK(b.d == 6);
    CHECK(b.K0 == 60);
    CHECK(b.L0 == 12);
    CHECK_THROWS_AS(degree_bounds(EllipticCurve(1, 0, 1, 9, 90, 38), 0), bad_input);
}
