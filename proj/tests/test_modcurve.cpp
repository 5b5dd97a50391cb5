#include "doctest.h"

#include "modparam/modcurve.hpp"

using namespace modparam;

TEST_CASE("index formula and coset reps") {
    CHECK(index_mu(2) == 3);
    CHECK(index_mu(11) == 12);
    CHECK(index_mu(38) == 60);
    CHECK(index_mu(40) == 72);
    CHECK(index_mu(46) == 72);
    CHECK(index_mu(176) == 288);
    CHECK(index_mu(389) == 390);

    auto r2 = coset_reps(2);
    CHECK(r2.size() == 3);
    auto r38 = coset_reps(38);
    CHECK(r38.size() == 60);
    for (auto& M : r38) CHECK(M.det() == 1);

    // pairwise inequivalence: M_a M_b^{-1} has lower-left != 0 mod N
    for (size_t i = 0; i < r38.size(); ++i)
        for (size_t j = i + 1; j < r38.size(); ++j) {
            Mat22 Q = r38[i] * r38[j].inv();
            CHECK(Q.c % 38 != 0);
        }
}

TEST_CASE("cusp counts and the N=176 list") {
    CHECK(cusp_count(11) == 2);
    CHECK(cusp_count(40) == 8);
    CHECK(cusp_count(46) == 4);
    CHECK(cusp_count(176) == 12);

    auto cl = cusp_list(176);
    REQUIRE((long)cl.size() == 12);
    // the paper's representatives
    std::vector<Cusp> expect = {Cusp(1, 1), Cusp(1, 2),  Cusp(1, 4),  Cusp(3, 4),
                                Cusp(1, 8), Cusp(1, 11), Cusp(1, 16), Cusp(1, 22),
                                Cusp(1, 44), Cusp(3, 44), Cusp(1, 88), Cusp(1, 176)};
    for (auto& e : expect) {
        bool found = false;
        for (auto& c : cl)
            if (c == e) found = true;
        CHECK(found);
    }
    // pairwise inequivalent
    for (size_t i = 0; i < cl.size(); ++i)
        for (size_t j = i + 1; j < cl.size(); ++j)
            CHECK(!cusp_equivalent(cl[i], cl[j], 176));
}

TEST_CASE("cusp equivalence and witnesses") {
    // prime level: [1] and [1/N] inequivalent; [0] ~ [1]
    CHECK(!cusp_equivalent(Cusp(1, 1), Cusp(1, 11), 11));
    CHECK(cusp_equivalent(Cusp(0, 1), Cusp(1, 1), 11));
    CHECK(cusp_equivalent(Cusp(1, 0), Cusp(1, 11), 11)); // oo ~ 1/N

    Mat22 W;
    REQUIRE(cusp_equivalent(Cusp(0, 1), Cusp(5, 1), 11, &W));
    CHECK(W.in_gamma0(11));
    CHECK(apply_to_cusp(W, Cusp(5, 1)) == Cusp(0, 1));

    // witness on a composite level
    auto cl = cusp_list(40);
    for (auto& c : cl) {
        // translate by a Gamma_0(40) element and recover equivalence
        Mat22 g{1, 0, 40, 1};
        Cusp moved = apply_to_cusp(g, c);
        Mat22 W2;
        REQUIRE(cusp_equivalent(c, moved, 40, &W2));
        CHECK(apply_to_cusp(W2, moved) == c);
    }

    // all integer cusps are equivalent to [1/1]
    CHECK(cusp_equivalent(Cusp(1, 1), Cusp(7, 1), 46));
}

TEST_CASE("cusp lowest terms normalization") {
    Cusp c(2, 46);
    CHECK(c.s == 1);
    CHECK(c.r == 23);
    Cusp d(-3, -9);
    CHECK(d.s == 1);
    CHECK(d.r == 3);
    Cusp inf(5, 0);
    CHECK(inf.is_infinity());
    CHECK(inf.s == 1);
}
