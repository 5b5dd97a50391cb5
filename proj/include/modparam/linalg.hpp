/*
   Copyright 2026 The modparam authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef MODPARAM_LINALG_HPP
#define MODPARAM_LINALG_HPP

#include <functional>
#include <future>
#include <thread>

#include "polynomial.hpp"

namespace modparam {

struct RationalMatrix {
    long rows = 0, cols = 0;
    std::vector<mpq_class> a;

    RationalMatrix() = default;
    RationalMatrix(long r, long c) : rows(r), cols(c), a((size_t)(r * c), mpq_class(0)) {}
    mpq_class& at(long i, long j) { return a[(size_t)(i * cols + j)]; }
    const mpq_class& at(long i, long j) const { return a[(size_t)(i * cols + j)]; }
};

// ---- Z/p kernel -------------------------------------------------------------

struct ZpKernel {
    long rank = 0;
    std::vector<long> pivots;             // ascending pivot columns
    std::vector<long> free_cols;          // ascending non-pivot columns
    std::vector<std::vector<u64>> basis;  // canonical kernel basis, basis[i][free_cols[i]] = 1
};

// row-echelon + optional canonical kernel basis; data is row-major and
// destroyed in place
inline ZpKernel zp_kernel(std::vector<u64>& m, long rows, long cols, u64 p, bool want_basis) {
    ZpKernel out;
    long prow = 0;
    std::vector<long> pivot_of_row;
    for (long col = 0; col < cols && prow < rows; ++col) {
        long sel = -1;
        for (long i = prow; i < rows; ++i)
            if (m[(size_t)(i * cols + col)] != 0) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != prow)
            for (long j = col; j < cols; ++j)
                std::swap(m[(size_t)(sel * cols + j)], m[(size_t)(prow * cols + j)]);
        u64* piv = &m[(size_t)(prow * cols)];
        u64 pinv = invmod(piv[col], p);
        for (long i = prow + 1; i < rows; ++i) {
            u64* row = &m[(size_t)(i * cols)];
            if (row[col] == 0) continue;
            u64 f = mulmod(row[col], pinv, p);
            u64 fs = shoup_prep(f, p);
            for (long j = col; j < cols; ++j)
                row[j] = submod(row[j], shoup_mulmod(f, piv[j], fs, p), p);
        }
        out.pivots.push_back(col);
        pivot_of_row.push_back(col);
        ++prow;
    }
    out.rank = prow;
    {
        std::vector<char> isp((size_t)cols, 0);
        for (long c : out.pivots) isp[(size_t)c] = 1;
        for (long c = 0; c < cols; ++c)
            if (!isp[(size_t)c]) out.free_cols.push_back(c);
    }
    if (!want_basis) return out;
    // back-substitute to reduced echelon: normalize pivots, clear above
    for (long r = out.rank - 1; r >= 0; --r) {
        long pc = pivot_of_row[(size_t)r];
        u64* row = &m[(size_t)(r * cols)];
        u64 inv = invmod(row[pc], p);
        if (inv != 1) {
            u64 is = shoup_prep(inv, p);
            for (long j = pc; j < cols; ++j) row[j] = shoup_mulmod(inv, row[j], is, p);
        }
        for (long i = 0; i < r; ++i) {
            u64* up = &m[(size_t)(i * cols)];
            if (up[pc] == 0) continue;
            u64 f = up[pc];
            u64 fs = shoup_prep(f, p);
            for (long j = pc; j < cols; ++j)
                up[j] = submod(up[j], shoup_mulmod(f, row[j], fs, p), p);
        }
    }
    for (long fc : out.free_cols) {
        std::vector<u64> v((size_t)cols, 0);
        v[(size_t)fc] = 1;
        for (long r = 0; r < out.rank; ++r) {
            long pc = pivot_of_row[(size_t)r];
            u64 e = m[(size_t)(r * cols + fc)];
            if (e) v[(size_t)pc] = p - e;
        }
        out.basis.push_back(std::move(v));
    }
    return out;
}

// ---- multimodular rational kernel -------------------------------------------

// fills `data` (row-major) for the reduction of the system mod p
using MatGen = std::function<void(u64 p, std::vector<u64>& data, long& rows, long& cols)>;

struct KernelProbe {
    long dim = 0;
    std::vector<long> pivots;
};

inline KernelProbe kernel_probe_mod(const MatGen& gen, u64 p) {
    std::vector<u64> data;
    long rows = 0, cols = 0;
    gen(p, data, rows, cols);
    ZpKernel k = zp_kernel(data, rows, cols, p, false);
    return {cols - k.rank, k.pivots};
}

struct RatKernel {
    std::vector<std::vector<mpq_class>> basis;
    std::vector<long> pivots;
    std::vector<long> free_cols;
    int primes_used = 0;
};

// True iff profile a (rank, pivots) should replace b: higher rank wins, then
// lexicographically earlier pivot columns.  Bad primes can only lower rank or
// push pivots right, so the maximum over primes is the rational profile.
inline bool profile_better(const std::vector<long>& pa, long ra,
                           const std::vector<long>& pb, long rb) {
    if (ra != rb) return ra > rb;
    return pa < pb;
}

// Reconstruct the canonical rational kernel basis of the system generated by
// `gen`.  `verify` may reject a lift, forcing more primes.  Deterministic:
// primes are consumed in a fixed order; batches only aid parallelism.
inline RatKernel multimodular_kernel(const MatGen& gen, int max_primes,
                                     const std::function<bool(const RatKernel&)>& verify,
                                     int nthreads = 2) {
    PrimeStream ps;
    long best_rank = -1;
    std::vector<long> best_pivots, best_free;
    long cols_seen = -1;
    size_t dim = 0;
    std::vector<std::vector<mpz_class>> acc; // per basis vector
    mpz_class accmod = 0;
    int used = 0;

    struct PrimeResult {
        u64 p;
        ZpKernel k;
    };

    auto run_prime = [&gen](u64 p) {
        std::vector<u64> data;
        long rows = 0, cols = 0;
        gen(p, data, rows, cols);
        PrimeResult r;
        r.p = p;
        r.k = zp_kernel(data, rows, cols, p, true);
        r.k.free_cols.shrink_to_fit();
        return std::make_pair(r, cols);
    };

    int consumed = 0;
    while (consumed < max_primes) {
        int batch = std::max(1, nthreads);
        std::vector<u64> pr;
        for (int i = 0; i < batch && consumed + i < max_primes; ++i) pr.push_back(ps.next());
        std::vector<std::future<std::pair<PrimeResult, long>>> futs;
        for (size_t i = 1; i < pr.size(); ++i)
            futs.push_back(std::async(std::launch::async, run_prime, pr[i]));
        std::vector<std::pair<PrimeResult, long>> results;
        results.push_back(run_prime(pr[0]));
        for (auto& f : futs) results.push_back(f.get());
        consumed += (int)pr.size();

        for (auto& [res, cols] : results) {
            cols_seen = cols;
            const ZpKernel& k = res.k;
            if (best_rank < 0 || profile_better(k.pivots, k.rank, best_pivots, best_rank)) {
                best_rank = k.rank;
                best_pivots = k.pivots;
                best_free = k.free_cols;
                dim = k.basis.size();
                acc.assign(dim, {});
                accmod = 0;
                used = 0;
            }
            if (dim == 0) {
                // a trivial kernel mod any prime certifies a trivial kernel over Q
                RatKernel cand;
                cand.pivots = best_pivots;
                cand.free_cols = best_free;
                cand.primes_used = 1;
                return cand;
            }
            if (k.rank != best_rank || k.pivots != best_pivots) continue; // unlucky prime
            for (size_t b = 0; b < dim; ++b)
                crt::merge(acc[b], accmod, k.basis[b], res.p);
            accmod = (accmod == 0) ? mpz_class((unsigned long)res.p)
                                   : accmod * mpz_class((unsigned long)res.p);
            ++used;

            RatKernel cand;
            cand.pivots = best_pivots;
            cand.free_cols = best_free;
            cand.primes_used = used;
            bool all_ok = accmod > 1;
            for (size_t b = 0; b < dim && all_ok; ++b) {
                std::vector<mpq_class> v((size_t)cols_seen);
                for (long j = 0; j < cols_seen && all_ok; ++j) {
                    mpq_class q;
                    if (!rational_reconstruct(acc[b][(size_t)j], accmod, &q)) all_ok = false;
                    else v[(size_t)j] = q;
                }
                if (all_ok) cand.basis.push_back(std::move(v));
            }
            if (all_ok && verify(cand)) return cand;
        }
    }
    throw precision_exhausted("multimodular_kernel: prime budget exhausted without a verified lift");
}

// ---- exact nullspace --------------------------------------------------------

// Fraction-free (Bareiss) echelon on an integer copy, then exact rational
// back-substitution.  Returns the canonical reduced-echelon kernel basis.
inline std::vector<std::vector<mpq_class>> rational_nullspace_exact(const RationalMatrix& M) {
    long rows = M.rows, cols = M.cols;
    std::vector<mpz_class> m((size_t)(rows * cols));
    for (long i = 0; i < rows; ++i) {
        mpz_class lcm = 1;
        for (long j = 0; j < cols; ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), M.at(i, j).get_den().get_mpz_t());
        for (long j = 0; j < cols; ++j)
            m[(size_t)(i * cols + j)] = mpq_class(M.at(i, j) * lcm).get_num();
    }
    std::vector<long> pivot_of_row;
    std::vector<long> pivots;
    mpz_class prev = 1;
    long prow = 0;
    for (long col = 0; col < cols && prow < rows; ++col) {
        long sel = -1;
        for (long i = prow; i < rows; ++i)
            if (m[(size_t)(i * cols + col)] != 0) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != prow)
            for (long j = 0; j < cols; ++j)
                std::swap(m[(size_t)(sel * cols + j)], m[(size_t)(prow * cols + j)]);
        for (long i = prow + 1; i < rows; ++i) {
            for (long j = col + 1; j < cols; ++j) {
                mpz_class t = m[(size_t)(i * cols + j)] * m[(size_t)(prow * cols + col)] -
                              m[(size_t)(i * cols + col)] * m[(size_t)(prow * cols + j)];
                mpz_divexact(m[(size_t)(i * cols + j)].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[(size_t)(i * cols + col)] = 0;
        }
        prev = m[(size_t)(prow * cols + col)];
        pivots.push_back(col);
        pivot_of_row.push_back(col);
        ++prow;
    }
    long rank = prow;
    std::vector<char> isp((size_t)cols, 0);
    for (long c : pivots) isp[(size_t)c] = 1;
    std::vector<std::vector<mpq_class>> basis;
    for (long fc = 0; fc < cols; ++fc) {
        if (isp[(size_t)fc]) continue;
        std::vector<mpq_class> v((size_t)cols, mpq_class(0));
        v[(size_t)fc] = 1;
        for (long r = rank - 1; r >= 0; --r) {
            long pc = pivot_of_row[(size_t)r];
            mpq_class s = 0;
            for (long j = pc + 1; j < cols; ++j)
                if (v[(size_t)j] != 0) s += mpq_class(m[(size_t)(r * cols + j)]) * v[(size_t)j];
            v[(size_t)pc] = -s / mpq_class(m[(size_t)(r * cols + pc)]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Exact right-nullspace basis with reduced-echelon pivots; fraction-free
// elimination for small systems, multi-modular above the row threshold.
inline std::vector<std::vector<mpq_class>> rational_nullspace(const RationalMatrix& M,
                                                              long small_threshold = 200) {
    if (M.rows <= small_threshold) return rational_nullspace_exact(M);
    MatGen gen = [&M](u64 p, std::vector<u64>& data, long& rows, long& cols) {
        rows = M.rows;
        cols = M.cols;
        Fp rg(p);
        data.assign((size_t)(rows * cols), 0);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
                data[(size_t)(i * cols + j)] = rg.from_mpq(M.at(i, j));
    };
    auto verify = [&M](const RatKernel& k) {
        for (auto& v : k.basis)
            for (long i = 0; i < M.rows; ++i) {
                mpq_class s = 0;
                for (long j = 0; j < M.cols; ++j)
                    if (v[(size_t)j] != 0) s += M.at(i, j) * v[(size_t)j];
                if (s != 0) return false;
            }
        return true;
    };
    RatKernel k = multimodular_kernel(gen, 256, verify);
    return k.basis;
}

// Pairs (c, d) with A c = B d, computed as the nullspace of [A | -B].
inline std::vector<std::pair<std::vector<mpq_class>, std::vector<mpq_class>>>
intersect_column_spaces(const RationalMatrix& A, const RationalMatrix& B) {
    if (A.rows != B.rows) throw bad_input("intersect_column_spaces: row-count mismatch");
    RationalMatrix M(A.rows, A.cols + B.cols);
    for (long i = 0; i < A.rows; ++i) {
        for (long j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
        for (long j = 0; j < B.cols; ++j) M.at(i, A.cols + j) = -B.at(i, j);
    }
    auto null = rational_nullspace(M);
    std::vector<std::pair<std::vector<mpq_class>, std::vector<mpq_class>>> out;
    for (auto& v : null) {
        std::vector<mpq_class> c(v.begin(), v.begin() + A.cols);
        std::vector<mpq_class> d(v.begin() + A.cols, v.end());
        out.emplace_back(std::move(c), std::move(d));
    }
    return out;
}

} // namespace modparam

#endif
