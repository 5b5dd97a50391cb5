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

#ifndef MODPARAM_MODCURVE_HPP
#define MODPARAM_MODCURVE_HPP

#include <set>

#include "arith.hpp"

namespace modparam {

struct Mat22 {
    i64 a = 1, b = 0, c = 0, d = 1;

    i64 det() const { return a * d - b * c; }
    Mat22 operator*(const Mat22& o) const {
        return Mat22{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat22 inv() const { // det must be 1
        return Mat22{d, -b, -c, a};
    }
    static Mat22 T(i64 m) { return Mat22{1, m, 0, 1}; }
    bool in_gamma0(long N) const { return det() == 1 && c % N == 0; }
};

// index mu = [SL2(Z) : Gamma_0(N)] = N prod_{p|N} (1 + 1/p)
inline long index_mu(long N) {
    long mu = N, n = N;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            mu += mu / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) mu += mu / n;
    return mu;
}

namespace detail {

// canonical representative of (c:d) in P^1(Z/N): lexicographic minimum over
// unit multiples
inline std::pair<long, long> p1_canonical(long c, long d, long N) {
    c %= N; if (c < 0) c += N;
    d %= N; if (d < 0) d += N;
    long bc = -1, bd = -1;
    for (long u = 1; u < N; ++u) {
        if (gcd_i64(u, N) != 1) continue;
        long cc = (long)(( (i64)u * c) % N), dd = (long)(((i64)u * d) % N);
        if (bc < 0 || cc < bc || (cc == bc && dd < bd)) { bc = cc; bd = dd; }
    }
    if (N == 1) return {0, 0};
    return {bc, bd};
}

// coprime lift of a P^1(Z/N) point to a bottom row of an SL2(Z) matrix
inline std::pair<i64, i64> p1_lift_coprime(long c, long d, long N) {
    if (c % N == 0) return {0, 1};
    for (long t = 0;; ++t) {
        i64 dd = d + (i64)t * N;
        if (gcd_i64(c, dd) == 1) return {c, dd};
        if (t > 4 * N + 8) throw std::runtime_error("p1_lift_coprime: no lift found");
    }
}

inline Mat22 sl2_from_bottom(i64 c, i64 d) {
    // extended gcd: a d - b c = 1
    i64 g = 0, x = 0, y = 0;
    // solve x*d + y*(-c) ... use standard egcd(d, c)
    {
        i64 r0 = d, r1 = c, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
            i64 q = r0 / r1;
            i64 tmp = r0 - q * r1; r0 = r1; r1 = tmp;
            tmp = s0 - q * s1; s0 = s1; s1 = tmp;
            tmp = t0 - q * t1; t0 = t1; t1 = tmp;
        }
        g = r0; x = s0; y = t0; // x*d + y*c = g
    }
    if (g == -1) { g = 1; x = -x; y = -y; }
    if (g != 1) throw std::runtime_error("sl2_from_bottom: bottom row not coprime");
    // a*d - b*c = 1 with a = x, b = -y
    Mat22 M{x, -y, c, d};
    if (M.det() != 1) throw std::runtime_error("sl2_from_bottom: internal error");
    return M;
}

} // namespace detail

// Complete set of right coset representatives for Gamma_0(N) in SL2(Z),
// one per point of P^1(Z/N) (bottom rows).
inline std::vector<Mat22> coset_reps(long N) {
    if (N < 1) throw bad_input("coset_reps: N must be >= 1");
    std::set<std::pair<long, long>> canon;
    for (long c = 0; c < std::max(1L, N); ++c)
        for (long d = 0; d < std::max(1L, N); ++d) {
            long g = gcd_i64(gcd_i64(c, d), N);
            if (N > 1 && g != 1) continue;
            canon.insert(detail::p1_canonical(c, d, N));
        }
    if (N == 1) canon = {{0, 0}};
    std::vector<Mat22> reps;
    for (auto& [c, d] : canon) {
        if (N == 1) { reps.push_back(Mat22{}); break; }
        auto [cl, dl] = detail::p1_lift_coprime(c, d, N);
        reps.push_back(detail::sl2_from_bottom(cl, dl));
    }
    long mu = index_mu(N);
    if ((long)reps.size() != mu)
        throw std::runtime_error("coset_reps: count mismatch with the index formula");
    return reps;
}

// Cusp s/r in lowest terms, r >= 0; r = 0 encodes the cusp at infinity (1/0).
struct Cusp {
    i64 s = 1, r = 0;

    Cusp() = default;
    Cusp(i64 S, i64 R) {
        if (S == 0 && R == 0) throw bad_input("Cusp: 0/0");
        i64 g = gcd_i64(S, R);
        S /= g; R /= g;
        if (R < 0) { S = -S; R = -R; }
        if (R == 0) S = 1;
        s = S;
        r = R;
    }
    bool is_infinity() const { return r == 0; }
    bool operator==(const Cusp& o) const { return s == o.s && r == o.r; }
    bool operator<(const Cusp& o) const { return std::pair(r, s) < std::pair(o.r, o.s); }
    std::string str() const {
        if (r == 0) return "oo";
        return std::to_string((long long)s) + "/" + std::to_string((long long)r);
    }
};

inline Cusp apply_to_cusp(const Mat22& M, const Cusp& c) {
    return Cusp(M.a * c.s + M.b * c.r, M.c * c.s + M.d * c.r);
}

// Gamma_0(N)-equivalence of cusps, with an optional witness gamma mapping c2
// to c1.  Decided through the bottom-row description of the cosets: the
// classes of Gamma_0(N) g T^m in P^1(Z/N) sweep the Gamma_infinity orbit.
inline bool cusp_equivalent(const Cusp& c1, const Cusp& c2, long N, Mat22* witness = nullptr) {
    // SL2 lift with the cusp as first column, so g(oo) = cusp
    auto lift = [](const Cusp& c) {
        i64 r0 = c.s, r1 = c.r, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
            i64 q = r0 / r1;
            i64 tmp = r0 - q * r1; r0 = r1; r1 = tmp;
            tmp = s0 - q * s1; s0 = s1; s1 = tmp;
            tmp = t0 - q * t1; t0 = t1; t1 = tmp;
        }
        if (r0 == -1) { s0 = -s0; t0 = -t0; } // s0*s + t0*r = 1
        Mat22 G{c.s, -t0, c.r, s0};
        if (G.det() != 1) throw std::runtime_error("cusp lift: det != 1");
        return G;
    };
    Mat22 g1 = lift(c1), g2 = lift(c2);
    auto t2 = detail::p1_canonical((long)(((g2.c % N) + N) % N), (long)(((g2.d % N) + N) % N), N);
    for (long m = 0; m < N; ++m) {
        Mat22 gm = g1 * Mat22::T(m);
        auto t1 = detail::p1_canonical((long)(((gm.c % N) + N) % N), (long)(((gm.d % N) + N) % N), N);
        if (t1 == t2) {
            if (witness) {
                Mat22 W = gm * g2.inv();
                if (!W.in_gamma0(N)) throw std::runtime_error("cusp witness: not in Gamma_0(N)");
                *witness = W;
            }
            return true;
        }
    }
    return false;
}

// One representative per cusp class: s/r with r | N and s running over the
// phi(gcd(r, N/r)) residue classes.
inline std::vector<Cusp> cusp_list(long N) {
    std::vector<Cusp> out;
    for (long r = 1; r <= N; ++r) {
        if (N % r != 0) continue;
        long g = gcd_i64(r, N / r);
        long want = 0;
        {
            long n = g, ph = g;
            for (long p = 2; p * p <= n; ++p)
                if (n % p == 0) {
                    ph -= ph / p;
                    while (n % p == 0) n /= p;
                }
            if (n > 1) ph -= ph / n;
            want = ph;
        }
        std::set<long> seen;
        for (long s = 1; (long)seen.size() < want && s <= r * g + g + 2; ++s) {
            if (gcd_i64(s, r) != 1) continue;
            long cls = s % g;
            if (seen.count(cls)) continue;
            seen.insert(cls);
            out.push_back(Cusp(s, r));
        }
        if ((long)seen.size() != want)
            throw std::runtime_error("cusp_list: class enumeration incomplete");
    }
    return out;
}

// number of cusp classes: sum over d | N of phi(gcd(d, N/d))
inline long cusp_count(long N) {
    auto phi = [](long n) {
        long r = n;
        for (long p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                r -= r / p;
                while (n % p == 0) n /= p;
            }
        if (n > 1) r -= r / n;
        return r;
    };
    long total = 0;
    for (long d = 1; d <= N; ++d)
        if (N % d == 0) total += phi(gcd_i64(d, N / d));
    return total;
}

} // namespace modparam

#endif
