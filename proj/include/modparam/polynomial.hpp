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

#ifndef MODPARAM_POLYNOMIAL_HPP
#define MODPARAM_POLYNOMIAL_HPP

#include <functional>
#include <sstream>

#include "rings.hpp"

namespace modparam {

// Dense univariate polynomial over Z, coefficients ascending.
struct UniPoly {
    std::vector<mpz_class> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<mpz_class> cs) : c(std::move(cs)) { normalize(); }
    static UniPoly from_si(std::initializer_list<long> cs) {
        UniPoly p;
        for (long v : cs) p.c.emplace_back(v);
        p.normalize();
        return p;
    }
    static UniPoly constant(const mpz_class& v) {
        UniPoly p;
        p.c.push_back(v);
        p.normalize();
        return p;
    }
    static UniPoly x_power(long n) {
        UniPoly p;
        p.c.assign((size_t)n + 1, 0);
        p.c[(size_t)n] = 1;
        return p;
    }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long degree() const { return (long)c.size() - 1; } // -1 for zero
    const mpz_class& lc() const { return c.back(); }
    mpz_class coeff(long i) const { return (i >= 0 && i < (long)c.size()) ? c[(size_t)i] : mpz_class(0); }

    bool operator==(const UniPoly& o) const { return c == o.c; }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long i = 0; i < (long)c.size(); ++i) {
            if (c[(size_t)i] == 0) continue;
            mpz_class v = c[(size_t)i];
            if (!first) os << (v < 0 ? " - " : " + ");
            else if (v < 0) os << "-";
            mpz_class av = abs(v);
            if (av != 1 || i == 0) os << av.get_str();
            if (i >= 1) {
                if (av != 1) os << "*";
                os << var;
                if (i >= 2) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }
};

inline UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.normalize();
    return r;
}
inline UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.normalize();
    return r;
}
inline UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly{};
    UniPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
}
inline UniPoly operator*(const UniPoly& a, const mpz_class& s) {
    UniPoly r = a;
    for (auto& v : r.c) v *= s;
    r.normalize();
    return r;
}
inline UniPoly operator-(const UniPoly& a) { return a * mpz_class(-1); }

inline UniPoly derivative(const UniPoly& a) {
    UniPoly r;
    for (long i = 1; i <= a.degree(); ++i) r.c.push_back(a.c[(size_t)i] * i);
    r.normalize();
    return r;
}

inline mpz_class content(const UniPoly& a) {
    mpz_class g = 0;
    for (const auto& v : a.c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// primitive part with positive leading coefficient
inline UniPoly primitive_part(const UniPoly& a) {
    if (a.is_zero()) return a;
    mpz_class g = content(a);
    if (a.lc() < 0) g = -g;
    UniPoly r = a;
    for (auto& v : r.c) v /= g;
    return r;
}

// exact division over Q with integrality/remainder checks; returns quotient
inline bool try_divide(const UniPoly& a, const UniPoly& b, UniPoly* quot) {
    if (b.is_zero()) return false;
    if (a.is_zero()) { if (quot) *quot = UniPoly{}; return true; }
    if (a.degree() < b.degree()) return false;
    std::vector<mpq_class> r(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = mpq_class(a.c[i]);
    long db = b.degree();
    mpq_class blc(b.lc());
    std::vector<mpq_class> q((size_t)(a.degree() - db + 1));
    for (long i = a.degree(); i >= db; --i) {
        mpq_class f = r[(size_t)i] / blc;
        q[(size_t)(i - db)] = f;
        if (f != 0)
            for (long j = 0; j <= db; ++j)
                r[(size_t)(i - db + j)] -= f * mpq_class(b.c[(size_t)j]);
    }
    for (long i = 0; i < db; ++i)
        if (r[(size_t)i] != 0) return false;
    UniPoly Q;
    Q.c.resize(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i].get_den() != 1) return false;
        Q.c[i] = q[i].get_num();
    }
    Q.normalize();
    if (quot) *quot = Q;
    return true;
}

inline bool divides(const UniPoly& a, const UniPoly& b) { // a | b ?
    UniPoly q;
    return try_divide(b, a, &q);
}

// ---- Z/p univariate helpers ----------------------------------------------

using ZpPoly = std::vector<u64>; // ascending, normalized

inline void zp_normalize(ZpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline long zp_degree(const ZpPoly& a) { return (long)a.size() - 1; }

inline ZpPoly unipoly_mod(const UniPoly& a, u64 p) {
    ZpPoly r(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = mpz_mod_u64(a.c[i], p);
    zp_normalize(r);
    return r;
}

inline ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
    }
    zp_normalize(r);
    return r;
}

// remainder of a by b (b monic not required)
inline ZpPoly zp_rem(ZpPoly a, const ZpPoly& b, u64 p) {
    long db = zp_degree(b);
    if (db < 0) throw std::runtime_error("zp_rem: division by zero poly");
    u64 binv = invmod(b.back(), p);
    while (zp_degree(a) >= db) {
        long da = zp_degree(a);
        u64 f = mulmod(a.back(), binv, p);
        for (long j = 0; j <= db; ++j)
            a[(size_t)(da - db + j)] = submod(a[(size_t)(da - db + j)], mulmod(f, b[(size_t)j], p), p);
        zp_normalize(a);
        if ((long)a.size() - 1 == da) a.pop_back(); // safety
    }
    return a;
}

inline ZpPoly zp_monic(ZpPoly a, u64 p) {
    if (a.empty()) return a;
    u64 inv = invmod(a.back(), p);
    for (auto& v : a) v = mulmod(v, inv, p);
    return a;
}

inline ZpPoly zp_gcd(ZpPoly a, ZpPoly b, u64 p) {
    zp_normalize(a);
    zp_normalize(b);
    while (!b.empty()) {
        ZpPoly r = zp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return zp_monic(a, p);
}

// classical resultant via the Euclidean recurrence
//   res(A,B) = (-1)^{deg A deg B} lc(B)^{deg A - deg R} res(B, R),  R = A mod B
inline u64 zp_resultant_classical(ZpPoly A, ZpPoly B, u64 p) {
    zp_normalize(A);
    zp_normalize(B);
    if (A.empty() || B.empty()) return 0;
    long m = zp_degree(A), n = zp_degree(B);
    bool neg = false;
    if (m < n) {
        std::swap(A, B);
        std::swap(m, n);
        if ((m & 1) && (n & 1)) neg = !neg;
    }
    u64 r = 1;
    while (n > 0) {
        ZpPoly R = zp_rem(A, B, p);
        long dr = zp_degree(R);
        if (dr < 0) return 0; // common factor of positive degree
        r = mulmod(r, powmod(B.back(), (u64)(m - dr), p), p);
        if ((m & 1) && (n & 1)) neg = !neg;
        A = std::move(B);
        B = std::move(R);
        m = n;
        n = dr;
    }
    r = mulmod(r, powmod(B.back(), (u64)m, p), p);
    if (neg && r) r = p - r;
    return r;
}

// The toolkit's fixed sign convention: ascending-power Sylvester matrix with
// the first argument's rows first.  This equals the classical resultant
// times (-1)^{deg P deg Q}.
inline u64 zp_resultant_spec(const ZpPoly& P, const ZpPoly& Q, u64 p) {
    long m = zp_degree(P), n = zp_degree(Q);
    u64 r = zp_resultant_classical(P, Q, p);
    if ((m & 1) && (n & 1) && r) r = p - r;
    return r;
}

// ---- CRT accumulation ------------------------------------------------------

// incremental Chinese remaindering with balanced (symmetric) lift; the
// caller owns the modulus: merge as many residue vectors as needed for one
// prime, then multiply the modulus by p once
namespace crt {

inline void merge(std::vector<mpz_class>& acc, const mpz_class& accmod,
                  const std::vector<u64>& res, u64 p) {
    if (accmod == 0) {
        acc.resize(res.size());
        for (size_t i = 0; i < res.size(); ++i) acc[i] = (unsigned long)res[i];
        return;
    }
    mpz_class pz((unsigned long)p);
    mpz_class minv;
    mpz_invert(minv.get_mpz_t(), accmod.get_mpz_t(), pz.get_mpz_t());
    for (size_t i = 0; i < res.size(); ++i) {
        u64 cur = mpz_mod_u64(acc[i], p);
        u64 diff = submod(res[i] % p, cur, p);
        mpz_class t = (minv * mpz_class((unsigned long)diff)) % pz;
        acc[i] += accmod * t;
    }
}

inline void balance(std::vector<mpz_class>& acc, const mpz_class& accmod) {
    mpz_class half = accmod / 2;
    for (auto& v : acc) {
        v %= accmod;
        if (v < 0) v += accmod;
        if (v > half) v -= accmod;
    }
}

} // namespace crt

// rational reconstruction (Wang): r mod m -> n/d with |n|,|d| <= sqrt(m/2)
inline bool rational_reconstruct(const mpz_class& r0in, const mpz_class& m, mpq_class* out) {
    mpz_class bound;
    mpz_class m2 = m / 2;
    mpz_sqrt(bound.get_mpz_t(), m2.get_mpz_t());
    mpz_class r0 = m, r1 = r0in % m;
    if (r1 < 0) r1 += m;
    mpz_class t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class tmp = r0 - q * r1;
        r0 = r1; r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1; t1 = tmp;
    }
    if (t1 == 0) return false;
    mpz_class n = r1, d = t1;
    if (d < 0) { n = -n; d = -d; }
    if (d > bound) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (g != 1) return false;
    *out = mpq_class(n) / mpq_class(d);
    return true;
}

// ---- GCD over Z (modular images with trial-division certificate) ----------

inline UniPoly poly_gcd(const UniPoly& A, const UniPoly& B) {
    if (A.is_zero() && B.is_zero()) throw bad_input("poly_gcd: both arguments zero");
    if (A.is_zero()) return primitive_part(B);
    if (B.is_zero()) return primitive_part(A);
    UniPoly a = primitive_part(A), b = primitive_part(B);
    mpz_class gamma;
    mpz_gcd(gamma.get_mpz_t(), a.lc().get_mpz_t(), b.lc().get_mpz_t());
    PrimeStream ps;
    long gdeg = std::min(a.degree(), b.degree()) + 1;
    std::vector<mpz_class> acc;
    mpz_class accmod = 0;
    for (int iter = 0; iter < 512; ++iter) {
        u64 p = ps.next();
        if (mpz_mod_u64(a.lc(), p) == 0 || mpz_mod_u64(b.lc(), p) == 0) continue;
        ZpPoly gp = zp_gcd(unipoly_mod(a, p), unipoly_mod(b, p), p);
        long d = zp_degree(gp);
        if (d == 0) return UniPoly::constant(1);
        if (d > gdeg) continue;       // unlucky prime
        if (d < gdeg) {               // sharper degree: restart accumulation
            gdeg = d;
            acc.clear();
            accmod = 0;
        }
        u64 gm = mpz_mod_u64(gamma, p);
        std::vector<u64> scaled(gp.size());
        for (size_t i = 0; i < gp.size(); ++i) scaled[i] = mulmod(gp[i], gm, p);
        crt::merge(acc, accmod, scaled, p);
        accmod = (accmod == 0) ? mpz_class((unsigned long)p) : accmod * mpz_class((unsigned long)p);
        std::vector<mpz_class> lifted = acc;
        crt::balance(lifted, accmod);
        UniPoly H{std::vector<mpz_class>(lifted.begin(), lifted.end())};
        H = primitive_part(H);
        if (!H.is_zero() && divides(H, a) && divides(H, b)) return H;
    }
    throw std::runtime_error("poly_gcd: modular reconstruction did not stabilize");
}

// Yun's squarefree decomposition: P = prod f_i^i up to sign/content
inline std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& P) {
    if (P.is_zero()) throw bad_input("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly a = primitive_part(P);
    if (a.degree() == 0) return out;
    UniPoly ap = derivative(a);
    UniPoly g = poly_gcd(a, ap);
    if (g.degree() == 0) {
        out.push_back({a, 1});
        return out;
    }
    UniPoly w, y, z;
    try_divide(a, g, &w);
    try_divide(ap, g, &y);
    z = y - derivative(w);
    int i = 1;
    while (!w.is_zero() && w.degree() > 0) {
        UniPoly gi = poly_gcd(w, z);
        if (gi.degree() > 0) out.push_back({gi, i});
        UniPoly wn, yn;
        try_divide(w, gi, &wn);
        try_divide(z, gi, &yn);
        z = yn - derivative(wn);
        w = wn;
        ++i;
        if (i > P.degree() + 2) throw std::runtime_error("squarefree_decomposition: no convergence");
    }
    return out;
}

inline UniPoly squarefree_part(const UniPoly& P) {
    if (P.is_zero()) throw bad_input("squarefree_part: zero polynomial");
    if (P.degree() == 0) return UniPoly::constant(1);
    UniPoly g = poly_gcd(P, derivative(P));
    UniPoly q;
    if (!try_divide(primitive_part(P), g, &q))
        throw std::runtime_error("squarefree_part: division failed");
    return primitive_part(q);
}

// ---- Bivariate polynomials over Z ------------------------------------------

// Dense grid c[k][l] for x^k j^l (variable names for display only).
struct BivarPoly {
    long K = 0, L = 0;
    std::vector<mpz_class> c; // (K+1)*(L+1), index k*(L+1)+l
    std::string var1 = "x", var2 = "j";

    BivarPoly() { c.assign(1, 0); }
    BivarPoly(long k, long l) : K(k), L(l) { c.assign((size_t)((K + 1) * (L + 1)), 0); }

    const mpz_class& at(long k, long l) const { return c[(size_t)(k * (L + 1) + l)]; }
    mpz_class& at(long k, long l) { return c[(size_t)(k * (L + 1) + l)]; }
    bool is_zero() const {
        for (auto& v : c)
            if (v != 0) return false;
        return true;
    }

    // shrink K, L to the actual support
    void trim() {
        long mk = 0, ml = 0;
        for (long k = 0; k <= K; ++k)
            for (long l = 0; l <= L; ++l)
                if (at(k, l) != 0) { mk = std::max(mk, k); ml = std::max(ml, l); }
        if (mk == K && ml == L) return;
        BivarPoly t(mk, ml);
        t.var1 = var1; t.var2 = var2;
        for (long k = 0; k <= mk; ++k)
            for (long l = 0; l <= ml; ++l) t.at(k, l) = at(k, l);
        *this = t;
    }

    mpz_class content() const {
        mpz_class g = 0;
        for (auto& v : c) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    // content 1 and the sign rule: first nonzero coefficient in
    // (k,l)-lexicographic order from the top is positive
    void normalize_content_sign() {
        trim();
        mpz_class g = content();
        if (g == 0) return;
        for (long k = K; k >= 0; --k) {
            bool done = false;
            for (long l = L; l >= 0; --l)
                if (at(k, l) != 0) {
                    if (at(k, l) < 0) g = -g;
                    done = true;
                    break;
                }
            if (done) break;
        }
        if (g != 1)
            for (auto& v : c) v /= g;
    }

    BivarPoly d_first() const { // d/dx
        if (K == 0) return BivarPoly(0, 0);
        BivarPoly r(K - 1, L);
        r.var1 = var1; r.var2 = var2;
        for (long k = 1; k <= K; ++k)
            for (long l = 0; l <= L; ++l) r.at(k - 1, l) = at(k, l) * k;
        r.trim();
        return r;
    }
    BivarPoly d_second() const { // d/dj
        if (L == 0) return BivarPoly(0, 0);
        BivarPoly r(K, L - 1);
        r.var1 = var1; r.var2 = var2;
        for (long k = 0; k <= K; ++k)
            for (long l = 1; l <= L; ++l) r.at(k, l - 1) = at(k, l) * l;
        r.trim();
        return r;
    }

    // A_K(second) and B_L(first) of the expansion sum A_k(j) x^k = sum B_l(x) j^l
    UniPoly lead_coeff_in_first() const {
        UniPoly r;
        r.c.assign((size_t)L + 1, 0);
        for (long l = 0; l <= L; ++l) r.c[(size_t)l] = at(K, l);
        r.normalize();
        return r;
    }
    UniPoly lead_coeff_in_second() const {
        UniPoly r;
        r.c.assign((size_t)K + 1, 0);
        for (long k = 0; k <= K; ++k) r.c[(size_t)k] = at(k, L);
        r.normalize();
        return r;
    }

    // specialize first variable to an exact rational; returns the numerator
    // polynomial in the second variable after clearing den^K
    UniPoly eval_first_rational(const mpq_class& x0) const {
        mpz_class num = x0.get_num(), den = x0.get_den();
        std::vector<mpz_class> powd((size_t)K + 1), pown((size_t)K + 1);
        powd[0] = 1; pown[0] = 1;
        for (long k = 1; k <= K; ++k) { powd[(size_t)k] = powd[(size_t)k - 1] * den; pown[(size_t)k] = pown[(size_t)k - 1] * num; }
        UniPoly r;
        r.c.assign((size_t)L + 1, 0);
        for (long l = 0; l <= L; ++l) {
            mpz_class s = 0;
            for (long k = 0; k <= K; ++k)
                s += at(k, l) * pown[(size_t)k] * powd[(size_t)(K - k)];
            r.c[(size_t)l] = s;
        }
        r.normalize();
        return r;
    }
    UniPoly eval_second_rational(const mpq_class& y0) const {
        mpz_class num = y0.get_num(), den = y0.get_den();
        std::vector<mpz_class> powd((size_t)L + 1), pown((size_t)L + 1);
        powd[0] = 1; pown[0] = 1;
        for (long l = 1; l <= L; ++l) { powd[(size_t)l] = powd[(size_t)l - 1] * den; pown[(size_t)l] = pown[(size_t)l - 1] * num; }
        UniPoly r;
        r.c.assign((size_t)K + 1, 0);
        for (long k = 0; k <= K; ++k) {
            mpz_class s = 0;
            for (long l = 0; l <= L; ++l)
                s += at(k, l) * pown[(size_t)l] * powd[(size_t)(L - l)];
            r.c[(size_t)k] = s;
        }
        r.normalize();
        return r;
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (long k = K; k >= 0; --k)
            for (long l = L; l >= 0; --l) {
                const mpz_class& v = at(k, l);
                if (v == 0) continue;
                if (!first) os << (v < 0 ? " - " : " + ");
                else if (v < 0) os << "-";
                mpz_class av = abs(v);
                bool unit = (av == 1) && (k > 0 || l > 0);
                if (!unit) os << av.get_str();
                if (k > 0) { os << (unit && k == K + 999 ? "" : (av == 1 ? "" : "*")) << var1; if (k > 1) os << "^" << k; unit = false; }
                if (l > 0) { os << ((k > 0 || av != 1) ? "*" : "") << var2; if (l > 1) os << "^" << l; }
                first = false;
            }
        if (first) os << "0";
        return os.str();
    }
};

enum class WhichVar { first, second };

namespace detail {

// total L1 mass of an integer bivariate polynomial
inline mpz_class bivar_l1(const BivarPoly& P) {
    mpz_class s = 0;
    for (auto& v : P.c) s += abs(v);
    return s;
}

// specialize the non-eliminated variable at t mod p, returning the poly in
// the eliminated variable
inline ZpPoly bivar_eval_keep_elim(const BivarPoly& P, bool elim_second, u64 t, u64 p) {
    // if elim_second: evaluate var1 = t, poly in var2; else evaluate var2 = t
    if (elim_second) {
        ZpPoly r((size_t)P.L + 1, 0);
        u64 tk = 1;
        for (long k = 0; k <= P.K; ++k) {
            for (long l = 0; l <= P.L; ++l) {
                u64 cv = mpz_mod_u64(P.at(k, l), p);
                if (cv) r[(size_t)l] = addmod(r[(size_t)l], mulmod(cv, tk, p), p);
            }
            tk = mulmod(tk, t, p);
        }
        zp_normalize(r);
        return r;
    } else {
        ZpPoly r((size_t)P.K + 1, 0);
        u64 tl = 1;
        for (long l = 0; l <= P.L; ++l) {
            for (long k = 0; k <= P.K; ++k) {
                u64 cv = mpz_mod_u64(P.at(k, l), p);
                if (cv) r[(size_t)k] = addmod(r[(size_t)k], mulmod(cv, tl, p), p);
            }
            tl = mulmod(tl, t, p);
        }
        zp_normalize(r);
        return r;
    }
}

inline long bivar_deg(const BivarPoly& P, WhichVar v) {
    long d = 0;
    for (long k = 0; k <= P.K; ++k)
        for (long l = 0; l <= P.L; ++l)
            if (P.at(k, l) != 0) d = std::max(d, v == WhichVar::first ? k : l);
    return d;
}

// leading coefficient w.r.t. the eliminated variable, as a polynomial in the
// kept variable (mod p), used to reject degenerate evaluation points
inline ZpPoly bivar_lc_elim(const BivarPoly& P, bool elim_second, u64 p) {
    long de = bivar_deg(P, elim_second ? WhichVar::second : WhichVar::first);
    if (elim_second) {
        ZpPoly r((size_t)P.K + 1, 0);
        for (long k = 0; k <= P.K; ++k) r[(size_t)k] = mpz_mod_u64(P.at(k, de), p);
        zp_normalize(r);
        return r;
    } else {
        ZpPoly r((size_t)P.L + 1, 0);
        for (long l = 0; l <= P.L; ++l) r[(size_t)l] = mpz_mod_u64(P.at(de, l), p);
        zp_normalize(r);
        return r;
    }
}

inline u64 zp_eval(const ZpPoly& a, u64 t, u64 p) {
    u64 r = 0;
    for (size_t i = a.size(); i-- > 0;) r = addmod(mulmod(r, t, p), a[i], p);
    return r;
}

// Lagrange interpolation from (xs, ys), all distinct xs
inline ZpPoly zp_interpolate(const std::vector<u64>& xs, const std::vector<u64>& ys, u64 p) {
    size_t n = xs.size();
    // Newton form
    std::vector<u64> dd = ys;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            u64 num = submod(dd[i], dd[i - 1], p);
            u64 den = submod(xs[i], xs[i - j], p);
            dd[i] = mulmod(num, invmod(den, p), p);
            if (i == j) break;
        }
    ZpPoly r{dd[n - 1]};
    for (size_t i = n - 1; i-- > 0;) {
        // r = r*(x - xs[i]) + dd[i]
        r.insert(r.begin(), 0);
        u64 xi = xs[i];
        for (size_t k = 0; k + 1 < r.size(); ++k)
            r[k] = submod(r[k], mulmod(xi, r[k + 1], p), p);
        r[0] = addmod(r[0], dd[i], p);
    }
    zp_normalize(r);
    return r;
}

} // namespace detail

// Resultant of two integer bivariate polynomials, eliminating `var`; exact
// integers by multi-modular evaluation/interpolation with a rigorous
// Hadamard-style coefficient bound (the permanental bound prod_rows sum_j
// |entry|_1 on the Sylvester matrix).  The sign convention is the ascending
// Sylvester determinant with P's rows first.
inline UniPoly resultant(const BivarPoly& P, const BivarPoly& Q, WhichVar var) {
    if (P.is_zero() || Q.is_zero()) throw bad_input("resultant: zero polynomial");
    bool elim_second = (var == WhichVar::second);
    long dP = detail::bivar_deg(P, var), dQ = detail::bivar_deg(Q, var);
    long kP = detail::bivar_deg(P, elim_second ? WhichVar::first : WhichVar::second);
    long kQ = detail::bivar_deg(Q, elim_second ? WhichVar::first : WhichVar::second);
    long D = dP * kQ + dQ * kP; // degree bound of the resultant in the kept variable
    // coefficient bound: rows of the Sylvester matrix
    mpz_class TP = detail::bivar_l1(P), TQ = detail::bivar_l1(Q);
    mpz_class bound = 1;
    for (long i = 0; i < dQ; ++i) bound *= TP;
    for (long i = 0; i < dP; ++i) bound *= TQ;
    bound = 2 * bound + 2;

    PrimeStream ps;
    std::vector<mpz_class> acc;
    mpz_class accmod = 0;
    mpz_class target = bound;
    while (accmod == 0 || accmod < target) {
        u64 p = ps.next();
        ZpPoly lcP = detail::bivar_lc_elim(P, elim_second, p);
        ZpPoly lcQ = detail::bivar_lc_elim(Q, elim_second, p);
        if (lcP.empty() || lcQ.empty()) continue; // whole lc vanished mod p
        std::vector<u64> xs, ys;
        u64 t = 0;
        while ((long)xs.size() < D + 1) {
            if (t >= p) throw std::runtime_error("resultant: ran out of evaluation points");
            u64 e1 = detail::zp_eval(lcP, t, p), e2 = detail::zp_eval(lcQ, t, p);
            if (e1 != 0 && e2 != 0) {
                ZpPoly Pt = detail::bivar_eval_keep_elim(P, elim_second, t, p);
                ZpPoly Qt = detail::bivar_eval_keep_elim(Q, elim_second, t, p);
                xs.push_back(t);
                ys.push_back(zp_resultant_spec(Pt, Qt, p));
            }
            ++t;
        }
        ZpPoly rp = detail::zp_interpolate(xs, ys, p);
        rp.resize((size_t)D + 1, 0);
        crt::merge(acc, accmod, rp, p);
        accmod = (accmod == 0) ? mpz_class((unsigned long)p) : accmod * mpz_class((unsigned long)p);
    }
    crt::balance(acc, accmod);
    UniPoly r{std::vector<mpz_class>(acc.begin(), acc.end())};
    return r;
}

} // namespace modparam

#endif

