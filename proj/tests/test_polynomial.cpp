#include "doctest.h"

#include <random>

#include "modparam/polynomial.hpp"

using namespace modparam;

TEST_CASE("unipoly basics and gcd") {
    UniPoly a = UniPoly::from_si({-1, 0, 1}); // x^2 - 1
    UniPoly b = UniPoly::from_si({-1, 1});    // x - 1
    CHECK(poly_gcd(a, b) == b);

    UniPoly x = UniPoly::from_si({0, 1});
    UniPoly xp1 = UniPoly::from_si({1, 1});
    CHECK(poly_gcd(x, xp1) == UniPoly::constant(1));

    // primitive, positive leading coefficient
    UniPoly c = UniPoly::from_si({-4, 0, -8});
    CHECK(primitive_part(c) == UniPoly::from_si({1, 0, 2}));

    UniPoly q;
    CHECK(try_divide(a, b, &q));
    CHECK(q == UniPoly::from_si({1, 1}));
    CHECK(!divides(UniPoly::from_si({0, 1}), xp1));
}

TEST_CASE("squarefree machinery") {
    UniPoly m = UniPoly::from_si({1, -2, 1}); // (x-1)^2
    CHECK(squarefree_part(m) == UniPoly::from_si({-1, 1}));
    UniPoly s = UniPoly::from_si({1, 0, 1}); // x^2+1
    CHECK(squarefree_part(s) == s);

    // H_{-7}(x)^2 = (x + 3375)^2
    UniPoly h7 = UniPoly::from_si({3375, 1});
    CHECK(squarefree_part(h7 * h7) == h7);

    auto dec = squarefree_decomposition(h7 * h7 * UniPoly::from_si({-1, 1}));
    REQUIRE(dec.size() == 2);
    CHECK(dec[0].first == UniPoly::from_si({-1, 1}));
    CHECK(dec[0].second == 1);
    CHECK(dec[1].first == h7);
    CHECK(dec[1].second == 2);

    // squarefree part divides P and is coprime to its derivative
    UniPoly P = h7 * h7 * s * UniPoly::from_si({2, 3});
    UniPoly sf = squarefree_part(P);
    CHECK(divides(sf, P));
    CHECK(poly_gcd(sf, derivative(sf)).degree() == 0);
}

static BivarPoly make_biv(long K, long L, std::initializer_list<std::tuple<long, long, long>> terms) {
    BivarPoly P(K, L);
    for (auto& [k, l, v] : terms) P.at(k, l) = v;
    return P;
}

TEST_CASE("resultant sign convention") {
    // Res_y(x - y, x + y) = 2x  (ascending Sylvester, P rows first)
    BivarPoly P = make_biv(1, 1, {{1, 0, 1}, {0, 1, -1}}); // x - y (var2 = y)
    BivarPoly Q = make_biv(1, 1, {{1, 0, 1}, {0, 1, 1}});  // x + y
    UniPoly r = resultant(P, Q, WhichVar::second);
    CHECK(r == UniPoly::from_si({0, 2}));

    // Res_y(y^2 - x, y) = -x
    BivarPoly A = make_biv(1, 2, {{0, 2, 1}, {1, 0, -1}});
    BivarPoly B = make_biv(0, 1, {{0, 1, 1}});
    UniPoly r2 = resultant(A, B, WhichVar::second);
    CHECK(r2 == UniPoly::from_si({0, -1}));
}

// direct ascending Sylvester determinant over Z via fraction-free expansion,
// used as an independent oracle on random small inputs
static mpz_class sylvester_det_at(const BivarPoly& P, const BivarPoly& Q, long x0) {
    long m = 0, n = 0;
    for (long k = 0; k <= P.K; ++k)
        for (long l = 0; l <= P.L; ++l)
            if (P.at(k, l) != 0) m = std::max(m, l);
    for (long k = 0; k <= Q.K; ++k)
        for (long l = 0; l <= Q.L; ++l)
            if (Q.at(k, l) != 0) n = std::max(n, l);
    long N = m + n;
    auto evalcol = [&](const BivarPoly& F, long l) {
        mpz_class s = 0, xp = 1;
        for (long k = 0; k <= F.K; ++k) {
            if (l <= F.L) s += F.at(k, l) * xp;
            xp *= x0;
        }
        return s;
    };
    std::vector<std::vector<mpq_class>> Mt((size_t)N, std::vector<mpq_class>((size_t)N, 0));
    for (long i = 0; i < n; ++i)
        for (long l = 0; l <= m; ++l) Mt[(size_t)i][(size_t)(i + l)] = mpq_class(evalcol(P, l));
    for (long i = 0; i < m; ++i)
        for (long l = 0; l <= n; ++l) Mt[(size_t)(n + i)][(size_t)(i + l)] = mpq_class(evalcol(Q, l));
    // Gaussian determinant over Q
    mpq_class det = 1;
    for (long c = 0; c < N; ++c) {
        long piv = -1;
        for (long r = c; r < N; ++r)
            if (Mt[(size_t)r][(size_t)c] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) { std::swap(Mt[(size_t)piv], Mt[(size_t)c]); det = -det; }
        det *= Mt[(size_t)c][(size_t)c];
        for (long r = c + 1; r < N; ++r) {
            mpq_class f = Mt[(size_t)r][(size_t)c] / Mt[(size_t)c][(size_t)c];
            if (f == 0) continue;
            for (long j = c; j < N; ++j) Mt[(size_t)r][(size_t)j] -= f * Mt[(size_t)c][(size_t)j];
        }
    }
    mpq_class d = det;
    d.canonicalize();
    CHECK(d.get_den() == 1);
    return d.get_num();
}

TEST_CASE("resultant agrees with direct Sylvester determinants") {
    std::mt19937_64 rng(777);
    for (int t = 0; t < 8; ++t) {
        BivarPoly P(2, 2), Q(2, 2);
        for (long k = 0; k <= 2; ++k)
            for (long l = 0; l <= 2; ++l) {
                P.at(k, l) = (long)(rng() % 9) - 4;
                Q.at(k, l) = (long)(rng() % 9) - 4;
            }
        if (P.is_zero() || Q.is_zero()) continue;
        P.trim();
        Q.trim();
        if (detail::bivar_deg(P, WhichVar::second) == 0 || detail::bivar_deg(Q, WhichVar::second) == 0)
            continue;
        UniPoly R = resultant(P, Q, WhichVar::second);
        for (long x0 : {0L, 1L, 2L, -1L, 5L}) {
            mpz_class direct = sylvester_det_at(P, Q, x0);
            mpq_class got(0);
            mpz_class xp = 1;
            for (long i = 0; i <= R.degree(); ++i) { got += mpq_class(R.coeff(i) * xp); xp *= x0; }
            CHECK(mpq_class(direct) == got);
        }
    }
}

TEST_CASE("resultant detects common factors") {
    // P = (y - x)(y + 1), Q = (y - x)(y + 2): Res_y = 0 identically? no:
    // resultant in y is a polynomial in x that vanishes iff common root; here
    // common factor (y - x) for all x => identically zero
    BivarPoly ymx = make_biv(1, 1, {{0, 1, 1}, {1, 0, -1}});
    BivarPoly yp1 = make_biv(0, 1, {{0, 1, 1}, {0, 0, 1}});
    BivarPoly yp2 = make_biv(0, 1, {{0, 1, 1}, {0, 0, 2}});
    auto mulb = [](const BivarPoly& A, const BivarPoly& B) {
        BivarPoly R(A.K + B.K, A.L + B.L);
        for (long k1 = 0; k1 <= A.K; ++k1)
            for (long l1 = 0; l1 <= A.L; ++l1)
                for (long k2 = 0; k2 <= B.K; ++k2)
                    for (long l2 = 0; l2 <= B.L; ++l2)
                        R.at(k1 + k2, l1 + l2) += A.at(k1, l1) * B.at(k2, l2);
        return R;
    };
    UniPoly r = resultant(mulb(ymx, yp1), mulb(ymx, yp2), WhichVar::second);
    CHECK(r.is_zero());
}

TEST_CASE("bivar normalization: content and sign rule") {
    BivarPoly P = make_biv(2, 1, {{2, 0, -6}, {1, 1, -9}, {0, 0, 3}});
    P.normalize_content_sign();
    // content 3 removed; top-lex nonzero (k=2,l=0) must be positive
    CHECK(P.at(2, 0) == 2);
    CHECK(P.at(1, 1) == 3);
    CHECK(P.at(0, 0) == -1);
}

TEST_CASE("rational reconstruction") {
    mpz_class m = 1;
    PrimeStream ps;
    for (int i = 0; i < 3; ++i) m *= (unsigned long)ps.next();
    mpq_class x(-22, 7);
    x.canonicalize();
    // residue of x mod m
    mpz_class num = x.get_num(), den = x.get_den();
    mpz_class deninv;
    mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    mpz_class r = (num * deninv) % m;
    mpq_class got;
    REQUIRE(rational_reconstruct(r, m, &got));
    CHECK(got == x);
}
