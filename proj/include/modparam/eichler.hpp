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

#ifndef MODPARAM_EICHLER_HPP
#define MODPARAM_EICHLER_HPP

#include <map>

#include "analytic.hpp"

namespace modparam {

// Per-curve workspace: newform coefficients extend on demand, period
// lattices are cached per precision.  Not safe for concurrent mutation;
// parallel phases must pre-extend and then only read.
struct CurveContext {
    EllipticCurve E;
    long mu;
    NewformSeries an;
    std::map<long, PeriodLattice> lattices;

    explicit CurveContext(EllipticCurve e) : E(std::move(e)), mu(index_mu(E.N)) {
        an = an_sequence(E, 64);
    }

    void ensure_an(long M) {
        if (an.M >= M) return;
        long target = std::max(M, an.M * 2);
        if (target > 3000000) throw precision_exhausted("ensure_an: coefficient budget exceeded");
        an = an_sequence(E, target);
    }

    const PeriodLattice& lattice(long bits) {
        auto it = lattices.find(bits);
        if (it != lattices.end()) return it->second;
        return lattices.emplace(bits, periods(E, bits)).first->second;
    }
};

namespace detail {

inline long eichler_terms(long bits, double im) {
    return (long)((double)(bits + 80) * std::log(2.0) / (2.0 * M_PI * im)) + 16;
}

} // namespace detail

// sum a_n / n e^{2 pi i n tau}; no reduction, so Im(tau) controls the cost
inline Cplx gamma_series_at(CurveContext& ctx, const Cplx& tau, long bits) {
    long prec = bits + 64;
    double im = tau.im.to_double();
    if (im <= 0) throw bad_input("gamma_series_at: not in the upper half-plane");
    long T = detail::eichler_terms(bits, im);
    ctx.ensure_an(T);
    Cplx q = q_of_tau(at_prec(tau, prec), prec);
    Cplx qn = Cplx::of_si(1, 0, prec);
    Cplx acc = Cplx::of_si(0, 0, prec);
    for (long n = 1; n <= T; ++n) {
        qn = qn * q;
        i64 a = ctx.an.at(n);
        if (a == 0) continue;
        mpq_class c(a, n);
        c.canonicalize();
        acc = acc + qn * Real::of_mpq(c, prec);
    }
    return acc;
}

// period P_f(M) = gamma(M tau0) - gamma(tau0), evaluated at the balanced
// point tau0 = (-d + i)/c where both sides have imaginary part 1/c
inline Cplx period_of_matrix_raw(CurveContext& ctx, Mat22 M, long bits) {
    if (!M.in_gamma0(ctx.E.N)) throw bad_input("period_of_matrix: not in Gamma_0(N)");
    if (M.c == 0) return Cplx::of_si(0, 0, bits + 64);
    if (M.c < 0) { M.a = -M.a; M.b = -M.b; M.c = -M.c; M.d = -M.d; }
    long prec = bits + 64;
    Real one = Real::of_si(1, prec);
    Cplx t0(Real::of_si(-M.d, prec) / Real::of_si(M.c, prec), one / Real::of_si(M.c, prec));
    Cplx t1(Real::of_si(M.a, prec) / Real::of_si(M.c, prec), one / Real::of_si(M.c, prec));
    return gamma_series_at(ctx, t1, bits) - gamma_series_at(ctx, t0, bits);
}

struct SnappedPeriod {
    Cplx value;
    bool exact = false;
    mpz_class m, n; // value = m w1 + n w2 when exact
};

inline SnappedPeriod snap_to_lattice(CurveContext& ctx, const Cplx& v, long bits) {
    SnappedPeriod out;
    out.value = v;
    const PeriodLattice& L = ctx.lattice(bits);
    mpz_class m, n;
    if (lattice_member(v, L, bits, &m, &n)) {
        out.exact = true;
        out.m = m;
        out.n = n;
        long prec = bits + 64;
        out.value = L.w1 * Real::of_mpz(m, prec) + L.w2 * Real::of_mpz(n, prec);
    }
    return out;
}

// P_f(M) snapped to the nearest lattice element (warning-free when within
// tolerance; otherwise the raw value is returned with exact = false)
inline SnappedPeriod period_of_matrix(CurveContext& ctx, const Mat22& M, long bits) {
    return snap_to_lattice(ctx, period_of_matrix_raw(ctx, M, bits), bits);
}

// Raise Im(tau) through Gamma_0(N) and return the reduced point plus the
// accumulated period correction: gamma(tau) = gamma(tau') - correction.
struct RaisedPoint {
    Cplx tau;
    Cplx correction;
};

inline RaisedPoint gamma_raise(CurveContext& ctx, const Cplx& tau_in, long bits) {
    long prec = bits + 64;
    long N = ctx.E.N;
    Cplx t = at_prec(tau_in, prec);
    Cplx corr = Cplx::of_si(0, 0, prec);
    for (int round = 0; round < 4096; ++round) {
        // translation part is period-free
        mpz_class sh = t.re.round_to_mpz();
        if (sh != 0) t.re = t.re - Real::of_mpz(sh, prec);
        // candidate improvement with c = N
        double imt = t.im.to_double();
        double ret = t.re.to_double();
        long d0 = (long)std::llround(-(double)N * ret);
        long best_d = 0;
        double best_gain = 1.0 + 1e-12;
        for (long d = d0 - 8; d <= d0 + 8; ++d) {
            if (gcd_i64(N, d) != 1) continue;
            double re = (double)N * ret + (double)d;
            double den = re * re + (double)N * imt * (double)N * imt;
            double gain = 1.0 / den;
            if (gain > best_gain) { best_gain = gain; best_d = d; }
        }
        if (best_gain <= 1.0 + 1e-12) break;
        long d = best_d;
        long a = (long)(invmod((u64)(((d % N) + N) % N), (u64)N));
        i64 b = ((i64)a * d - 1) / N;
        Mat22 G{a, b, N, d};
        if (G.det() != 1) throw std::runtime_error("gamma_raise: bad step matrix");
        // t' = G t
        Cplx num = t * Real::of_si(G.a, prec);
        num.re = num.re + Real::of_si((long)G.b, prec);
        Cplx den = t * Real::of_si((long)G.c, prec);
        den.re = den.re + Real::of_si((long)G.d, prec);
        t = num / den;
        corr = corr + period_of_matrix_raw(ctx, G, bits);
    }
    return {t, corr};
}

// Eichler integral gamma(tau) = int_{i oo}^{tau} 2 pi i f dz
inline Cplx eichler_gamma(CurveContext& ctx, const Cplx& tau, long bits) {
    RaisedPoint rp = gamma_raise(ctx, tau, bits);
    return gamma_series_at(ctx, rp.tau, bits) - rp.correction;
}

// ---- cusp values ---------------------------------------------------------------

struct CuspGamma {
    Cplx value;
    mpq_class mw1, mw2; // gamma = mw1 * w1 + mw2 * w2 exactly
    long hecke_prime = 0;
    bool lattice_point() const { return mw1.get_den() == 1 && mw2.get_den() == 1; }
};

// gamma(s/r) = (sum_j P_f(M_j)) / (p + 1 - a_p) for the minimal auxiliary
// prime p coprime to N fixing the cusp class under the Hecke spreading
inline CuspGamma gamma_at_cusp(CurveContext& ctx, const Cusp& c, long bits) {
    long prec = bits + 64;
    long N = ctx.E.N;
    CuspGamma out;
    if (c.is_infinity()) {
        out.value = Cplx::of_si(0, 0, prec);
        out.mw1 = 0;
        out.mw2 = 0;
        out.hecke_prime = 0;
        return out;
    }
    // minimal usable auxiliary prime
    long p = 0;
    for (long cand = 2; cand < 1000; ++cand) {
        if (!is_prime_u64((u64)cand) || N % cand == 0) continue;
        bool ok = cusp_equivalent(c, Cusp(cand * c.s, c.r), N);
        for (long j = 0; ok && j < cand; ++j)
            if (!cusp_equivalent(c, Cusp(c.r * j + c.s, cand * c.r), N)) ok = false;
        if (ok) { p = cand; break; }
    }
    if (p == 0) throw precision_exhausted("gamma_at_cusp: no auxiliary prime found below 1000");
    ctx.ensure_an(p + 1);
    mpz_class msum = 0, nsum = 0;
    for (long j = 0; j <= p; ++j) {
        Cusp aux = (j == p) ? Cusp(p * c.s, c.r) : Cusp(c.r * j + c.s, p * c.r);
        Mat22 W;
        if (!cusp_equivalent(c, aux, N, &W))
            throw std::runtime_error("gamma_at_cusp: auxiliary cusp not equivalent");
        SnappedPeriod P = period_of_matrix(ctx, W, bits);
        if (!P.exact) throw precision_exhausted("gamma_at_cusp: period failed to snap to the lattice");
        msum += P.m;
        nsum += P.n;
    }
    long denom = p + 1 - (long)ctx.an.at(p);
    out.hecke_prime = p;
    out.mw1 = mpq_class(msum, denom);
    out.mw1.canonicalize();
    out.mw2 = mpq_class(nsum, denom);
    out.mw2.canonicalize();
    const PeriodLattice& L = ctx.lattice(bits);
    out.value = L.w1 * Real::of_mpq(out.mw1, prec) + L.w2 * Real::of_mpq(out.mw2, prec);
    return out;
}

// ---- the parametrization map ------------------------------------------------------

struct CurvePoint {
    bool infinity = false;
    Cplx x, y;
};

inline CurvePoint phi_from_gamma(CurveContext& ctx, const Cplx& g, long bits) {
    long prec = bits + 64;
    const PeriodLattice& L = ctx.lattice(bits);
    CurvePoint P;
    if (lattice_member(g, L, bits)) {
        P.infinity = true;
        return P;
    }
    WpValue wp = weierstrass_p(g, L, bits);
    if (wp.pole) {
        P.infinity = true;
        return P;
    }
    mpq_class b2_12(ctx.E.b2(), 12);
    b2_12.canonicalize();
    mpq_class ycst(ctx.E.a1 * ctx.E.b2() - 12 * ctx.E.a3, 24);
    ycst.canonicalize();
    P.x = wp.p - Cplx(Real::of_mpq(b2_12, prec), Real::of_si(0, prec));
    Cplx a1h = Cplx(Real::of_mpq(mpq_class(ctx.E.a1) / 2, prec), Real::of_si(0, prec));
    P.y = wp.dp / Real::of_si(2, prec) - a1h * wp.p + Cplx(Real::of_mpq(ycst, prec), Real::of_si(0, prec));
    return P;
}

inline CurvePoint phi_eval(CurveContext& ctx, const Cplx& tau, long bits) {
    Cplx g = eichler_gamma(ctx, tau, bits);
    return phi_from_gamma(ctx, g, bits);
}

inline CurvePoint phi_eval_cusp(CurveContext& ctx, const Cusp& c, long bits) {
    CuspGamma g = gamma_at_cusp(ctx, c, bits);
    CurvePoint P;
    if (g.lattice_point()) {
        P.infinity = true;
        return P;
    }
    return phi_from_gamma(ctx, g.value, bits);
}

// residual of the curve equation at a complex point
inline Real curve_residual(const EllipticCurve& E, const Cplx& x, const Cplx& y) {
    long prec = x.prec();
    auto R = [&](const mpz_class& z) { return Cplx(Real::of_mpz(z, prec), Real::of_si(0, prec)); };
    Cplx lhs = y * y + R(E.a1) * x * y + R(E.a3) * y;
    Cplx rhs = x * x * x + R(E.a2) * x * x + R(E.a4) * x + R(E.a6);
    return cabs(lhs - rhs);
}

// L(E,1) from the incomplete sums g(A) = sum a_n/n e^{-2 pi n A / sqrt N}:
// unfolding the Fricke involution gives L(E,1) = g(A) - w g(1/A) for every
// A > 0, where f|W_N = w f.  The printed two-term form 2 g(1) presumes
// w = -1; the eigenvalue is detected numerically from g(A) = g(1/A).
struct LValue {
    Cplx value;
    Real error;
    int fricke_sign = 0;
};

namespace detail {

inline Real l_partial_sum(CurveContext& ctx, long bits, const mpq_class& A, Real* tail_out) {
    long prec = bits + 64;
    double sqN = std::sqrt((double)ctx.E.N);
    double Ad = mpq_class(A).get_d();
    long T = (long)((double)(bits + 60) * std::log(2.0) * sqN / (2.0 * M_PI * Ad)) + 32;
    ctx.ensure_an(T);
    Real Ar = Real::of_mpq(A, prec);
    Real x = rexp(-(rmul_2exp(Real::pi(prec), 1) * Ar / rsqrt(Real::of_si(ctx.E.N, prec))));
    Real xn = Real::of_si(1, prec);
    Real acc = Real::of_si(0, prec);
    for (long n = 1; n <= T; ++n) {
        xn = xn * x;
        i64 a = ctx.an.at(n);
        if (a == 0) continue;
        mpq_class cq(a, n);
        cq.canonicalize();
        acc = acc + xn * Real::of_mpq(cq, prec);
    }
    // tail: sum_{n>T} n x^n <= (T+1) x^{T+1} / (1-x)^2
    Real xT = rexp(rlog(x) * Real::of_si(T + 1, prec));
    Real om = Real::of_si(1, prec) - x;
    if (tail_out) *tail_out = Real::of_si(T + 1, prec) * xT / (om * om);
    return acc;
}

} // namespace detail

inline LValue l_value_at_1(CurveContext& ctx, long bits) {
    Real t1(64), t2(64);
    mpq_class A(5, 4), B(4, 5);
    A.canonicalize();
    B.canonicalize();
    Real gA = detail::l_partial_sum(ctx, bits, A, &t1);
    Real gB = detail::l_partial_sum(ctx, bits, B, &t2);
    Real diff = rabs(gA - gB), both = rabs(gA) + rabs(gB) + Real::of_si(1, 64);
    int w = (diff < both * Real::pow2(-bits / 2, 64)) ? +1 : -1;
    LValue out;
    out.fricke_sign = w;
    Real val = (w > 0) ? (gA - gB) : (gA + gB);
    out.value = Cplx(val, Real::of_si(0, val.prec()));
    out.error = ubound_add(ubound_add(t1, t2), Real::pow2(-bits, 64));
    return out;
}

} // namespace modparam

#endif
