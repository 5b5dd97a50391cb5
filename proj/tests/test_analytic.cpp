#include "doctest.h"

#include <random>

#include "modparam/eichler.hpp"
#include "modparam/taniyama.hpp"

using namespace modparam;

static double dabs(const Real& r) { return std::abs(r.to_double()); }

TEST_CASE("eval_j classical values") {
    long bits = 256, prec = bits + 64;
    Cplx i01 = Cplx::of_si(0, 1, prec);
    Cplx j_i = eval_j(i01, bits);
    CHECK(dabs(j_i.re - Real::of_si(1728, prec)) < 1e-60);
    CHECK(dabs(j_i.im) < 1e-60);

    Cplx rho(Real::of_double(-0.5, prec), rmul_2exp(rsqrt(Real::of_si(3, prec)), -1));
    Cplx j_rho = eval_j(rho, bits);
    CHECK(dabs(j_rho.re) < 1e-55);
    CHECK(dabs(j_rho.im) < 1e-55);

    // tau0 = (7 + sqrt(-7))/4: j = -3375
    Cplx tau0(Real::of_mpq(mpq_class(7, 4), prec), rsqrt(Real::of_si(7, prec)) / Real::of_si(4, prec));
    Cplx jt = eval_j(tau0, bits);
    CHECK(dabs(jt.re + Real::of_si(3375, prec)) < 1e-55);
    CHECK(dabs(jt.im) < 1e-55);
}

TEST_CASE("eval_j is SL2(Z)-invariant") {
    long bits = 192, prec = bits + 64;
    std::mt19937_64 rng(4242);
    for (int t = 0; t < 6; ++t) {
        Cplx tau(Real::of_double((double)(rng() % 1000) / 1000.0 - 0.5, prec),
                 Real::of_double(0.3 + (double)(rng() % 1000) / 800.0, prec));
        Cplx j1 = eval_j(tau, bits);
        Mat22 M{1, 1, 1, 2}; // arbitrary SL2 element
        Cplx num = tau * Real::of_si(M.a, prec);
        num.re = num.re + Real::of_si((long)M.b, prec);
        Cplx den = tau * Real::of_si((long)M.c, prec);
        den.re = den.re + Real::of_si((long)M.d, prec);
        Cplx j2 = eval_j(num / den, bits);
        CHECK(cabs(j1 - j2).to_double() < 1e-40 * (1 + cabs(j1).to_double()));
    }
}

TEST_CASE("periods of 38a1 match the printed values") {
    EllipticCurve E38(1, 0, 1, 9, 90, 38, "38a1");
    PeriodLattice L = periods(E38, 256);
    Real w1_ref = Real::of_str("1.8906322299422985362", 320);
    CHECK(dabs(L.w1.re - w1_ref) < 5e-19);
    Real w2re_ref = Real::of_str("0.9453161149711", 320);
    Real w2im_ref = Real::of_str("-0.601313878981", 320);
    CHECK(dabs(L.w2.re - w2re_ref) < 1e-12);
    CHECK(dabs(L.w2.im - w2im_ref) < 1e-11);
}

TEST_CASE("periods of 11a1 against L(E,1) = w1/5") {
    CurveContext ctx(EllipticCurve(0, -1, 1, -10, -20, 11, "11a1"));
    PeriodLattice L = periods(ctx.E, 192);
    LValue lv = l_value_at_1(ctx, 128);
    CHECK(dabs(lv.value.re - rdiv_si(L.w1.re, 5)) < 1e-30);
    // spec example value
    CHECK(std::abs(lv.value.re.to_double() - 0.2538418609) < 1e-9);
    // convergence: halving the target precision budget agrees within error
    LValue lv2 = l_value_at_1(ctx, 64);
    CHECK(cabs(lv.value - lv2.value).to_double() <= lv2.error.to_double() + 1e-18);
}

TEST_CASE("L(37a1, 1) vanishes") {
    CurveContext ctx(EllipticCurve(0, 0, 1, -1, 0, 37, "37a1"));
    LValue lv = l_value_at_1(ctx, 128);
    CHECK(cabs(lv.value).to_double() < 1e-20);
}

TEST_CASE("weierstrass p satisfies its differential equation") {
    EllipticCurve E(0, -1, 1, -10, -20, 11, "11a1");
    long bits = 256, prec = bits + 64;
    PeriodLattice L = periods(E, bits);
    mpq_class g2q(E.c4(), 12), g3q(E.c6(), 216);
    g2q.canonicalize();
    g3q.canonicalize();
    Cplx g2(Real::of_mpq(g2q, prec), Real::of_si(0, prec));
    Cplx g3(Real::of_mpq(g3q, prec), Real::of_si(0, prec));
    std::mt19937_64 rng(7);
    for (int t = 0; t < 5; ++t) {
        Cplx z = L.w1 * Real::of_double(0.13 + 0.11 * (double)(rng() % 7), prec) +
                 L.w2 * Real::of_double(0.29 + 0.07 * (double)(rng() % 5), prec);
        WpValue w = weierstrass_p(z, L, bits);
        REQUIRE(!w.pole);
        Cplx resid = w.dp * w.dp - (w.p * w.p * w.p * Real::of_si(4, prec) - g2 * w.p - g3);
        CHECK(cabs(resid) < Real::pow2(-100, prec));
        // periodicity
        WpValue w2 = weierstrass_p(z + L.w1, L, bits);
        CHECK(cabs(w2.p - w.p) < Real::pow2(-100, prec));
    }
    // half-period value is a root of the cubic
    WpValue h = weierstrass_p(L.w1 / Real::of_si(2, prec), L, bits);
    Cplx cube = h.p * h.p * h.p * Real::of_si(4, prec) - g2 * h.p - g3;
    CHECK(cabs(cube) < Real::pow2(-100, prec));
    // z in the lattice signals a pole
    WpValue pole = weierstrass_p(L.w1 + L.w2, L, bits);
    CHECK(pole.pole);
}

TEST_CASE("phi_eval agrees with the Taniyama q-expansion") {
    CurveContext ctx(EllipticCurve(0, -1, 1, -10, -20, 11, "11a1"));
    long bits = 192, prec = bits + 64;
    auto T = taniyama_series(ctx.E, 80);
    Cplx tau(Real::of_double(0.21, prec), Real::of_double(0.9, prec));
    CurvePoint P = phi_eval(ctx, tau, bits);
    REQUIRE(!P.infinity);
    Cplx q = q_of_tau(tau, prec);
    auto eval_series = [&](const LaurentSeries<QQ>& s) {
        Cplx acc = Cplx::of_si(0, 0, prec);
        for (long n = s.prec; n >= s.val; --n) {
            acc = acc * q;
            acc.re = acc.re + Real::of_mpq(s.coeff(n), prec);
        }
        Cplx qv = cpow_ui(q, (unsigned long)(-s.val));
        return acc / qv;
    };
    Cplx xs = eval_series(T.xq);
    Cplx ys = eval_series(T.yq);
    CHECK(cabs(P.x - xs).to_double() < 1e-40);
    CHECK(cabs(P.y - ys).to_double() < 1e-40);
    CHECK(curve_residual(ctx.E, P.x, P.y).to_double() < 1e-40);
}

TEST_CASE("gamma cocycle: gamma(M tau) - gamma(tau) is a lattice point") {
    CurveContext ctx(EllipticCurve(1, 0, 1, 9, 90, 38, "38a1"));
    long bits = 192, prec = bits + 64;
    std::mt19937_64 rng(11);
    auto reps = coset_reps(38);
    for (int t = 0; t < 5; ++t) {
        Cplx tau(Real::of_double((double)(rng() % 100) / 100.0 - 0.5, prec),
                 Real::of_double(0.4 + (double)(rng() % 100) / 150.0, prec));
        // a Gamma_0(38) element
        Mat22 M{1 + 38 * (long)(rng() % 3), (long)(rng() % 4) + 1, 0, 0};
        // complete to det 1 with c = 38k: choose M = [[a,b],[c,d]] from T^u L T^v
        Mat22 G = Mat22::T((long)(rng() % 5) - 2) * Mat22{1, 0, 38, 1} * Mat22::T((long)(rng() % 5) - 2);
        (void)M;
        Cplx num = tau * Real::of_si((long)G.a, prec);
        num.re = num.re + Real::of_si((long)G.b, prec);
        Cplx den = tau * Real::of_si((long)G.c, prec);
        den.re = den.re + Real::of_si((long)G.d, prec);
        Cplx g1 = eichler_gamma(ctx, num / den, bits);
        Cplx g0 = eichler_gamma(ctx, tau, bits);
        CHECK(lattice_member(g1 - g0, ctx.lattice(bits), bits));
    }
}

TEST_CASE("period_of_matrix basics") {
    CurveContext ctx(EllipticCurve(0, -1, 1, -10, -20, 11, "11a1"));
    long bits = 192;
    SnappedPeriod id = period_of_matrix(ctx, Mat22{}, bits);
    CHECK(id.exact);
    CHECK(id.m == 0);
    CHECK(id.n == 0);
    Mat22 G{1, 0, 11, 1};
    SnappedPeriod a = period_of_matrix(ctx, G, bits);
    SnappedPeriod b = period_of_matrix(ctx, G.inv(), bits);
    REQUIRE(a.exact);
    REQUIRE(b.exact);
    CHECK(a.m == -b.m);
    CHECK(a.n == -b.n);
    CHECK_THROWS_AS(period_of_matrix(ctx, Mat22{1, 0, 7, 1}, bits), bad_input);
}

TEST_CASE("tau_from_j special cases and roundtrip") {
    long bits = 192, prec = bits + 64;
    Cplx t1728 = tau_from_j(Cplx::of_si(1728, 0, prec), bits);
    CHECK(cabs(t1728 - Cplx::of_si(0, 1, prec)).to_double() < 1e-30);
    Cplx t0 = tau_from_j(Cplx::of_si(0, 0, prec), bits);
    CHECK(std::abs(t0.re.to_double() + 0.5) < 1e-30);
    CHECK(std::abs(t0.im.to_double() - std::sqrt(3.0) / 2) < 1e-15);

    std::mt19937_64 rng(31415);
    for (int t = 0; t < 8; ++t) {
        Cplx tau(Real::of_double((double)(rng() % 999) / 1000.0 - 0.499, prec),
                 Real::of_double(0.9 + (double)(rng() % 999) / 600.0, prec));
        Cplx beta = eval_j(tau, bits);
        Cplx back = tau_from_j(beta, bits);
        Cplx jback = eval_j(back, bits);
        CHECK(cabs(jback - beta).to_double() <=
              1e-30 * (1.0 + cabs(beta).to_double()));
    }
}

TEST_CASE("hilbert class polynomials") {
    CHECK(hilbert_class_poly(-7, 256) == UniPoly::from_si({3375, 1}));
    CHECK(hilbert_class_poly(-4, 256) == UniPoly::from_si({-1728, 1}));
    CHECK(hilbert_class_poly(-8, 256) == UniPoly::from_si({-8000, 1}));
    UniPoly h20 = hilbert_class_poly(-20, 256);
    CHECK(h20.degree() == 2);
    // roots must match eval_j at the two reduced-form points
    auto roots = complex_roots(h20, 128);
    auto forms = reduced_forms(-20);
    REQUIRE(forms.size() == 2);
    long prec = 320;
    for (auto& f : forms) {
        Cplx tau(Real::of_si(-f.b, prec) / Real::of_si(2 * f.a, prec),
                 rsqrt(Real::of_si(20, prec)) / Real::of_si(2 * f.a, prec));
        Cplx jv = eval_j(tau, 256);
        bool matched = false;
        for (auto& r : roots)
            if (cabs(r.z - jv).to_double() < 1e-20) matched = true;
        CHECK(matched);
    }
    CHECK_THROWS_AS(hilbert_class_poly(-5, 128), bad_input);
}
