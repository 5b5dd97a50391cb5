#include "doctest.h"

#include <random>

#include "modparam/linalg.hpp"

using namespace modparam;

TEST_CASE("rational_nullspace basics") {
    RationalMatrix I(2, 2);
    I.at(0, 0) = 1;
    I.at(1, 1) = 1;
    CHECK(rational_nullspace(I).empty());

    RationalMatrix M(2, 2);
    M.at(0, 0) = 1; M.at(0, 1) = 1;
    M.at(1, 0) = 2; M.at(1, 1) = 2;
    auto ker = rational_nullspace(M);
    REQUIRE(ker.size() == 1);
    // canonical basis: free column 1 equals 1 => vector (-1, 1), i.e. (1,-1) up to sign
    CHECK(ker[0][0] == -1);
    CHECK(ker[0][1] == 1);
}

TEST_CASE("exact vs multimodular nullspace on random systems") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 6; ++t) {
        long rows = 12, cols = 9;
        RationalMatrix M(rows, cols);
        // build with a planted rank deficiency
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols - 2; ++j)
                M.at(i, j) = mpq_class((long)(rng() % 21) - 10);
        for (long i = 0; i < rows; ++i) {
            M.at(i, cols - 2) = M.at(i, 0) + M.at(i, 1) * 3;
            M.at(i, cols - 1) = M.at(i, 2) - M.at(i, 0);
        }
        auto exact = rational_nullspace_exact(M);

        MatGen gen = [&M](u64 p, std::vector<u64>& data, long& r, long& c) {
            r = M.rows; c = M.cols;
            Fp rg(p);
            data.assign((size_t)(r * c), 0);
            for (long i = 0; i < r; ++i)
                for (long j = 0; j < c; ++j) data[(size_t)(i * c + j)] = rg.from_mpq(M.at(i, j));
        };
        auto verify = [&](const RatKernel& k) { return k.basis.size() == exact.size(); };
        RatKernel mm = multimodular_kernel(gen, 64, verify);
        REQUIRE(mm.basis.size() == exact.size());
        for (size_t b = 0; b < exact.size(); ++b)
            for (long j = 0; j < cols; ++j) CHECK(mm.basis[b][(size_t)j] == exact[b][(size_t)j]);
        // exact kernel property: M v = 0
        for (auto& v : exact)
            for (long i = 0; i < rows; ++i) {
                mpq_class s = 0;
                for (long j = 0; j < cols; ++j) s += M.at(i, j) * v[(size_t)j];
                CHECK(s == 0);
            }
    }
}

TEST_CASE("intersect_column_spaces") {
    RationalMatrix A(1, 1), B(1, 1);
    A.at(0, 0) = 1;
    B.at(0, 0) = 1;
    auto r = intersect_column_spaces(A, B);
    REQUIRE(r.size() == 1);
    CHECK(r[0].first[0] * 1 == r[0].second[0]);

    RationalMatrix A2(2, 1), B2(2, 1);
    A2.at(0, 0) = 1;
    B2.at(1, 0) = 1;
    CHECK(intersect_column_spaces(A2, B2).empty());

    RationalMatrix A3(2, 1);
    CHECK_THROWS_AS(intersect_column_spaces(A3, RationalMatrix(3, 1)), bad_input);
}

TEST_CASE("zp_kernel structure") {
    u64 p = PrimeStream().next();
    // matrix [[1,2,3],[2,4,6]] over F_p: rank 1, kernel dim 2
    std::vector<u64> m = {1, 2, 3, 2, 4, 6};
    ZpKernel k = zp_kernel(m, 2, 3, p, true);
    CHECK(k.rank == 1);
    REQUIRE(k.basis.size() == 2);
    for (auto& v : k.basis) {
        u64 s = addmod(addmod(v[0], mulmod(2, v[1], p), p), mulmod(3, v[2], p), p);
        CHECK(s == 0);
    }
}
