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

#ifndef MODPARAM_CURVE_HPP
#define MODPARAM_CURVE_HPP

#include <map>
#include <sstream>

#include "qexp.hpp"

namespace modparam {

// Weierstrass model y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with a
// trusted conductor N.  The model is assumed minimal and optimal with
// Manin constant 1; non-optimal inputs parametrize the isogenous optimal
// lattice only up to scaling.
struct EllipticCurve {
    mpz_class a1, a2, a3, a4, a6;
    long N = 0;
    std::string label; // display only, never resolved externally

    EllipticCurve() = default;
    EllipticCurve(long A1, long A2, long A3, long A4, long A6, long cond,
                  std::string lab = "")
        : a1(A1), a2(A2), a3(A3), a4(A4), a6(A6), N(cond), label(std::move(lab)) {
        if (N < 1) throw bad_input("EllipticCurve: conductor must be >= 1");
        if (discriminant() == 0) throw bad_input("EllipticCurve: singular model (disc = 0)");
    }

    mpz_class b2() const { return a1 * a1 + 4 * a2; }
    mpz_class b4() const { return 2 * a4 + a1 * a3; }
    mpz_class b6() const { return a3 * a3 + 4 * a6; }
    mpz_class b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    mpz_class c4() const { return b2() * b2() - 24 * b4(); }
    mpz_class c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
    mpz_class discriminant() const {
        mpz_class B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    std::string tag() const {
        std::ostringstream os;
        os << "N" << N << "[" << a1 << "," << a2 << "," << a3 << "," << a4 << "," << a6 << "]";
        return os.str();
    }

    bool operator==(const EllipticCurve& o) const {
        return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6 && N == o.N;
    }

    // exact point test over Q
    bool contains(const mpq_class& x, const mpq_class& y) const {
        mpq_class lhs = y * y + mpq_class(a1) * x * y + mpq_class(a3) * y;
        mpq_class rhs = x * x * x + mpq_class(a2) * x * x + mpq_class(a4) * x + mpq_class(a6);
        return lhs == rhs;
    }
};

namespace detail {

// naive count of #E(F_p) including the point at infinity, p <= 3 or small p
inline long count_points_naive(const EllipticCurve& E, long p) {
    long a1 = mpz_mod_u64(E.a1, (u64)p), a2 = mpz_mod_u64(E.a2, (u64)p);
    long a3 = mpz_mod_u64(E.a3, (u64)p), a4 = mpz_mod_u64(E.a4, (u64)p);
    long a6 = mpz_mod_u64(E.a6, (u64)p);
    long cnt = 1;
    for (long x = 0; x < p; ++x)
        for (long y = 0; y < p; ++y) {
            long lhs = (y * y + a1 * x * y + a3 * y) % p;
            long rhs = (((x * x % p) * x) % p + a2 * x % p * x % p + a4 * x + a6) % p;
            if ((lhs - rhs) % p == 0) ++cnt;
        }
    return cnt;
}

// quadratic-character sum over the completed square form, p odd
inline long count_points_char_sum(const EllipticCurve& E, long p) {
    u64 P = (u64)p;
    std::vector<char> qr((size_t)p, 0);
    for (long t = 0; t <= p / 2; ++t) qr[(size_t)((u64)t * t % P)] = 1;
    u64 B2 = mpz_mod_u64(E.b2(), P), B4 = mpz_mod_u64(E.b4(), P), B6 = mpz_mod_u64(E.b6(), P);
    // y^2 + a1xy + a3y = cubic  <=>  (2y + a1x + a3)^2 = 4x^3 + b2x^2 + 2b4x + b6
    long sum = 0;
    for (u64 x = 0; x < P; ++x) {
        u64 v = (4 * x % P * x % P * x % P + B2 * x % P * x % P + 2 * B4 % P * x % P + B6) % P;
        if (v == 0) continue;
        sum += qr[(size_t)v] ? 1 : -1;
    }
    // #affine = sum over x of (1 + chi(rhs)) counting rhs=0 once
    return p + 1 + sum;
}

struct SingularFiber {
    long x0, y0;   // singular point mod p
    int kind;      // 0 additive, +1 split, -1 non-split
};

inline SingularFiber classify_bad_reduction(const EllipticCurve& E, long p) {
    u64 P = (u64)p;
    long a1 = (long)mpz_mod_u64(E.a1, P), a2 = (long)mpz_mod_u64(E.a2, P);
    long a3 = (long)mpz_mod_u64(E.a3, P), a4 = (long)mpz_mod_u64(E.a4, P);
    long a6 = (long)mpz_mod_u64(E.a6, P);
    auto md = [&](long v) { long r = v % p; return r < 0 ? r + p : r; };
    long sx = -1, sy = -1;
    for (long x = 0; x < p && sx < 0; ++x)
        for (long y = 0; y < p; ++y) {
            long F = md(y * y + a1 * x * y + a3 * y - (md(md(x * x) * x) + a2 * md(x * x) + a4 * x + a6));
            long Fx = md(a1 * y - (3 * md(x * x) + 2 * a2 * x + a4));
            long Fy = md(2 * y + a1 * x + a3);
            if (F == 0 && Fx == 0 && Fy == 0) { sx = x; sy = y; break; }
        }
    if (sx < 0) throw std::runtime_error("classify_bad_reduction: no singular point found");
    SingularFiber S{sx, sy, 0};
    // tangent cone v^2 + a1 uv - (3 x0 + a2) u^2 at the singular point
    long c = md(3 * sx + a2);
    if (p == 2) {
        if (a1 % 2 == 0) { S.kind = 0; return S; }
        S.kind = (c % 2 == 0) ? +1 : -1;
        return S;
    }
    long disc = md(a1 * a1 + 4 * c);
    if (disc == 0) { S.kind = 0; return S; }
    // Euler criterion
    S.kind = (powmod((u64)disc, (u64)((p - 1) / 2), P) == 1) ? +1 : -1;
    return S;
}

} // namespace detail

// a_p = p + 1 - #E(F_p) for good p; 0 / +1 / -1 at bad primes per
// reduction type (additive, split, non-split multiplicative).
inline long ap_point_count(const EllipticCurve& E, long p) {
    if (p < 2) throw bad_input("ap_point_count: p must be prime");
    mpz_class disc = E.discriminant();
    bool bad = mpz_divisible_ui_p(disc.get_mpz_t(), (unsigned long)p) != 0;
    if (!bad) {
        long cnt = (p <= 3) ? detail::count_points_naive(E, p) : detail::count_points_char_sum(E, p);
        return p + 1 - cnt;
    }
    if (E.N % p != 0)
        throw bad_input("ap_point_count: model is not minimal at a prime dividing the discriminant");
    return detail::classify_bad_reduction(E, p).kind;
}

// Normalized newform coefficients a_1..a_M: a_p from counting, prime
// powers by the Hecke recursion, the rest by multiplicativity.
struct NewformSeries {
    std::vector<i64> a; // a[n] for 1 <= n <= M, a[0] unused
    long M = 0;
    i64 at(long n) const { return a[(size_t)n]; }
};

inline NewformSeries an_sequence(const EllipticCurve& E, long M) {
    if (M < 1) throw bad_input("an_sequence: M must be >= 1");
    NewformSeries f;
    f.M = M;
    f.a.assign((size_t)M + 1, 0);
    f.a[1] = 1;
    // smallest prime factor sieve
    std::vector<long> spf((size_t)M + 1, 0);
    for (long i = 2; i <= M; ++i) {
        if (spf[(size_t)i] == 0)
            for (long j = i; j <= M; j += i)
                if (spf[(size_t)j] == 0) spf[(size_t)j] = i;
    }
    std::map<long, i64> ap_cache;
    for (long n = 2; n <= M; ++n) {
        long p = spf[(size_t)n];
        long pk = p, k = 1;
        long m = n / p;
        while (m % p == 0) { m /= p; pk *= p; ++k; }
        if (m != 1) {
            f.a[(size_t)n] = f.a[(size_t)m] * f.a[(size_t)pk];
            continue;
        }
        // n = p^k
        auto it = ap_cache.find(p);
        i64 ap = (it != ap_cache.end()) ? it->second : (ap_cache[p] = ap_point_count(E, p));
        if (k == 1) {
            f.a[(size_t)n] = ap;
        } else if (E.N % p == 0) {
            f.a[(size_t)n] = f.a[(size_t)(n / p)] * ap;
        } else {
            f.a[(size_t)n] = ap * f.a[(size_t)(n / p)] - (i64)p * f.a[(size_t)(n / p / p)];
        }
    }
    return f;
}

template <class R>
LaurentSeries<R> newform_q_series(R rg, const NewformSeries& f, long M) {
    LaurentSeries<R> s(rg, 1, M);
    for (long n = 1; n <= std::min(M, f.M); ++n)
        s.a[(size_t)(n - 1)] = rg.from_si((long)f.at(n));
    s.normalize();
    return s;
}

} // namespace modparam

#endif
