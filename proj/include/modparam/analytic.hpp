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

#ifndef MODPARAM_ANALYTIC_HPP
#define MODPARAM_ANALYTIC_HPP

#include <cmath>
#include <mutex>

#include "cplx.hpp"
#include "curve.hpp"
#include "modcurve.hpp"
#include "roots.hpp"

namespace modparam {

// ---- j-invariant -------------------------------------------------------------

namespace detail {

inline const std::vector<mpz_class>& j_coeffs_upto(long M) {
    static std::vector<mpz_class> cache; // cache[i] = coefficient of q^{i-1}
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    if ((long)cache.size() < M + 2) {
        long target = std::max(M + 2, (long)cache.size() * 2 + 16);
        auto j = j_series(target - 1);
        cache.resize((size_t)target);
        for (long n = -1; n <= target - 2; ++n) cache[(size_t)(n + 1)] = mpq_class(j.coeff(n)).get_num();
    }
    return cache;
}

// terms needed so that |j_n q^n| <= 2^-(bits+40) for |q| <= qabs_log scale;
// coefficient growth |j_n| ~ e^{4 pi sqrt(n)}
inline long j_terms_needed(long bits, double im_tau) {
    double c = (double)(bits + 50) * std::log(2.0);
    double a = 2.0 * M_PI * im_tau; // -log |q|
    // solve a n - 4 pi sqrt(n) = c
    double s = (4.0 * M_PI + std::sqrt(16.0 * M_PI * M_PI + 4.0 * a * c)) / (2.0 * a);
    return (long)(s * s) + 8;
}

} // namespace detail

struct ReducedPoint {
    Cplx tau;  // in the standard fundamental domain
    Mat22 M;   // tau = M tau_in
};

// Reduce to |Re| <= 1/2, |tau| >= 1 (left-boundary gauge).
inline ReducedPoint reduce_to_fundamental_domain(const Cplx& tau_in, long prec) {
    Cplx t = at_prec(tau_in, prec);
    if (!(t.im > Real::of_si(0, prec))) throw bad_input("reduce: point not in the upper half-plane");
    Mat22 M;
    Real half = Real::of_double(0.5, prec);
    Real one = Real::of_si(1, prec);
    for (int it = 0; it < 100000; ++it) {
        mpz_class m = t.re.round_to_mpz();
        if (m != 0) {
            long mm = (long)m.get_si();
            t.re = t.re - Real::of_mpz(m, prec);
            M = Mat22::T(-mm) * M;
        }
        Real n = cnorm(t);
        if (n < one) {
            t = -(conj(t) / n); // -1/t = -conj(t)/|t|^2
            M = Mat22{0, -1, 1, 0} * M;
        } else {
            // boundary normalization: Re = +1/2 -> -1/2
            if (!(t.re < half)) {
                t.re = t.re - one;
                M = Mat22::T(-1) * M;
            }
            break;
        }
    }
    return {t, M};
}

inline Cplx eval_j(const Cplx& tau, long bits) {
    long prec = bits + 64;
    ReducedPoint rp = reduce_to_fundamental_domain(tau, prec);
    long T = detail::j_terms_needed(bits, 0.85);
    const auto& jc = detail::j_coeffs_upto(T + 2);
    Cplx q = q_of_tau(rp.tau, prec);
    // Horner from the top on j = q^-1 + 744 + ...
    Cplx acc = Cplx::of_si(0, 0, prec);
    for (long n = T; n >= -1; --n) {
        acc = acc * q;
        acc.re = acc.re + Real::of_mpz(jc[(size_t)(n + 1)], prec);
    }
    // multiply by q^-1: currently acc = sum j_n q^{n+1}
    return acc / q;
}

// j(N tau)
inline Cplx eval_J(const Cplx& tau, long N, long bits) {
    Cplx nt(at_prec(tau, bits + 64));
    nt.re = rmul_si(nt.re, N);
    nt.im = rmul_si(nt.im, N);
    return eval_j(nt, bits);
}

// ---- lattices and the Weierstrass function -----------------------------------

struct PeriodLattice {
    Cplx w1, w2;  // basis; for real curves w1 is real > 0 and Im(w2/w1) < 0
    long bits = 0;
};

namespace detail {

// optimal complex AGM
inline Cplx agm(Cplx a, Cplx b, long prec) {
    Real tol = Real::pow2(-prec + 10, prec);
    for (int it = 0; it < 4 * (int)prec; ++it) {
        Cplx a1 = (a + b) / Real::of_si(2, prec);
        Cplx b1 = csqrt(a * b);
        // choose the root with |a1 - b1| <= |a1 + b1|; tie: Im(b1/a1) > 0
        Real dm = cabs(a1 - b1), dp = cabs(a1 + b1);
        if (dp < dm) b1 = -b1;
        else if (!(dm < dp)) {
            Cplx ratio = b1 / a1;
            if (ratio.im.sign() < 0) b1 = -b1;
        }
        a = a1;
        b = b1;
        Real diff = cabs(a - b);
        if (!(diff > tol * cabs(a))) break;
    }
    return a;
}

} // namespace detail

// period pair of y^2 = 4x^3 - g2 x - g3 from an ordering of its roots
inline std::pair<Cplx, Cplx> periods_from_roots(const Cplx& e1, const Cplx& e2, const Cplx& e3,
                                                long prec) {
    Cplx s13 = csqrt(e1 - e3), s12 = csqrt(e1 - e2), s23 = csqrt(e2 - e3);
    Real pi = Real::pi(prec);
    Cplx m1 = detail::agm(s13, s12, prec);
    Cplx m2 = detail::agm(s13, s23, prec);
    Cplx w1 = Cplx(pi, Real::of_si(0, prec)) / m1;
    Cplx w2 = Cplx(Real::of_si(0, prec), pi) / m2;
    return {w1, w2};
}

// reduce (w1, w2) to a Gauss-reduced oriented basis: |Re(w2/w1)| <= 1/2,
// |w2/w1| >= 1, Im(w2/w1) > 0
inline void gauss_reduce_basis(Cplx& w1, Cplx& w2, long prec) {
    Cplx tau = w2 / w1;
    if (tau.im.sign() < 0) { w2 = -w2; tau = -tau; }
    for (int it = 0; it < 10000; ++it) {
        mpz_class m = (w2 / w1).re.round_to_mpz();
        if (m != 0) w2 = w2 - w1 * Real::of_mpz(m, prec);
        if (cnorm(w2) < cnorm(w1)) {
            std::swap(w1, w2);
            continue;
        }
        break;
    }
    if ((w2 / w1).im.sign() < 0) w2 = -w2;
}

struct WpValue {
    bool pole = false;
    Cplx p, dp; // value and derivative
};

// Weierstrass p and p' for the lattice Z w1 + Z w2 via the q-series on a
// Gauss-reduced basis; z within 2^{-bits/2} of a lattice point reports a pole
inline WpValue weierstrass_p(const Cplx& z_in, const PeriodLattice& L, long bits) {
    long prec = bits + 64;
    Cplx w1 = at_prec(L.w1, prec), w2 = at_prec(L.w2, prec);
    gauss_reduce_basis(w1, w2, prec);
    Cplx z = at_prec(z_in, prec);
    // coordinates of z in the basis
    auto coords = [&](const Cplx& v) {
        Real den = (conj(w1) * w2).im;
        Real t = (conj(w1) * v).im / den;
        Real s = (v * conj(w2)).im / ((w1 * conj(w2)).im);
        return std::pair<Real, Real>(s, t);
    };
    auto [s, t] = coords(z);
    mpz_class ms = s.round_to_mpz(), mt = t.round_to_mpz();
    z = z - w1 * Real::of_mpz(ms, prec) - w2 * Real::of_mpz(mt, prec);

    WpValue out;
    Real scale = cabs(w1);
    if (!(cabs(z) > scale * Real::pow2(-bits / 2, prec))) {
        out.pole = true;
        return out;
    }
    Cplx tau = w2 / w1;
    Cplx q = q_of_tau(tau, prec);
    Cplx u = q_of_tau(z / w1, prec);
    long T = (long)((double)(bits + 60) * std::log(2.0) / (2.0 * M_PI * tau.im.to_double())) + 4;

    Cplx one = Cplx::of_si(1, 0, prec);
    Cplx twelfth = Cplx::of_si(1, 0, prec) / Real::of_si(12, prec);
    Cplx omu = one - u;
    Cplx P = twelfth + u / (omu * omu);
    Cplx DP = u * (one + u) / (omu * omu * omu);
    Cplx qn = q;
    for (long n = 1; n <= T; ++n) {
        Cplx qu = qn * u;
        Cplx qdu = qn / u;
        Cplx d1 = one - qu, d2 = one - qdu, d3 = one - qn;
        P = P + qu / (d1 * d1) + qdu / (d2 * d2) - (qn / (d3 * d3)) * Real::of_si(2, prec);
        DP = DP + qu * (one + qu) / (d1 * d1 * d1) - qdu * (one + qdu) / (d2 * d2 * d2);
        qn = qn * q;
    }
    // prefactors (2 pi i / w1)^2 = -4 pi^2 / w1^2 and (2 pi i / w1)^3
    Real pi = Real::pi(prec);
    Cplx w1sq = w1 * w1;
    Cplx pref2 = Cplx(-(pi * pi) * Real::of_si(4, prec), Real::of_si(0, prec)) / w1sq;
    Cplx pref3 = Cplx(Real::of_si(0, prec), -(pi * pi * pi) * Real::of_si(8, prec)) / (w1sq * w1);
    out.p = pref2 * P;
    out.dp = pref3 * DP;
    return out;
}

// membership of v in the lattice within 2^{-bits/4}; returns integer
// coordinates when inside
inline bool lattice_member(const Cplx& v, const PeriodLattice& L, long bits,
                           mpz_class* mout = nullptr, mpz_class* nout = nullptr) {
    long prec = std::max(L.w1.prec(), v.prec());
    Real den = (conj(L.w1) * L.w2).im;
    Real t = (conj(L.w1) * v).im / den;
    Real s = (v * conj(L.w2)).im / ((L.w1 * conj(L.w2)).im);
    mpz_class m = s.round_to_mpz(), n = t.round_to_mpz();
    if (abs(m) > 64 || abs(n) > 64) return false;
    Cplx res = v - L.w1 * Real::of_mpz(m, prec) - L.w2 * Real::of_mpz(n, prec);
    Real tol = Real::pow2(-bits / 4, prec) * cabs(L.w1);
    if (cabs(res) > tol) return false;
    if (mout) *mout = m;
    if (nout) *nout = n;
    return true;
}

// ---- curve periods -------------------------------------------------------------

namespace detail {

inline std::vector<Cplx> cubic_roots_4z3(const Cplx& g2, const Cplx& g3, long prec) {
    // roots of 4 z^3 - g2 z - g3
    std::vector<Cplx> cs(4, Cplx(prec));
    cs[0] = -g3;
    cs[1] = -g2;
    cs[2] = Cplx::of_si(0, 0, prec);
    cs[3] = Cplx::of_si(4, 0, prec);
    auto roots = aberth_roots(cs, prec);
    if (roots.size() != 3) throw precision_exhausted("cubic_roots: solver failure");
    return roots;
}

} // namespace detail

// Period lattice of a rational curve: w1 real positive, Im(w2/w1) != 0.
// Validated internally against the exact j-invariant of the curve.
inline PeriodLattice periods(const EllipticCurve& E, long bits) {
    long prec = bits + 96;
    mpq_class g2q(E.c4(), 12), g3q(E.c6(), 216);
    g2q.canonicalize();
    g3q.canonicalize();
    Cplx g2(Real::of_mpq(g2q, prec), Real::of_si(0, prec));
    Cplx g3(Real::of_mpq(g3q, prec), Real::of_si(0, prec));
    auto roots = detail::cubic_roots_4z3(g2, g3, prec);
    // sort: real roots descending first (disc > 0 has three, disc < 0 has one)
    std::sort(roots.begin(), roots.end(), [](const Cplx& a, const Cplx& b) {
        bool ra = rabs(a.im) < Real::pow2(-30, 64), rb = rabs(b.im) < Real::pow2(-30, 64);
        if (ra != rb) return ra;
        return a.re > b.re;
    });
    mpz_class disc = E.discriminant();
    Cplx w1(prec), w2(prec);
    if (disc > 0) {
        // e1 > e2 > e3 real
        auto [a, b] = periods_from_roots(roots[0], roots[1], roots[2], prec);
        w1 = a;
        w2 = b;
    } else {
        // one real root e1; complex pair e2 = conj(e3)
        Cplx e1 = roots[0], e2 = roots[1], e3 = roots[2];
        if (e2.im.sign() < 0) std::swap(e2, e3);
        auto [a, b] = periods_from_roots(e1, e2, e3, prec);
        w1 = a;
        w2 = b;
    }
    // normalize to the toolkit convention: w1 real > 0; Re w2 = 0 (disc > 0)
    // or w1/2 (disc < 0); Im w2 < 0
    Real dust = Real::pow2(-prec / 2, prec) * cabs(w1);
    if (rabs(w1.im) > dust) throw precision_exhausted("periods: real period has imaginary part");
    w1 = Cplx(rabs(w1.re), Real::of_si(0, prec));
    {
        mpz_class k = (w2.re / w1.re).round_to_mpz();
        w2 = Cplx(w2.re - w1.re * Real::of_mpz(k, prec), w2.im);
        if (w2.im.sign() > 0) {
            w2 = -w2;
            mpz_class k2 = (w2.re / w1.re).round_to_mpz();
            w2 = Cplx(w2.re - w1.re * Real::of_mpz(k2, prec), w2.im);
        }
        if (disc > 0) {
            if (rabs(w2.re) > dust) throw precision_exhausted("periods: rectangular lattice expected");
            w2 = Cplx(Real::of_si(0, prec), w2.im);
        } else {
            // snap the real part to +w1/2
            if (w2.re.sign() < 0) w2 = Cplx(w2.re + w1.re, w2.im);
            Real half = rmul_2exp(w1.re, -1);
            if (rabs(w2.re - half) > dust)
                throw precision_exhausted("periods: expected Re(w2) = w1/2");
            w2 = Cplx(half, w2.im);
        }
    }
    PeriodLattice L{w1, w2, bits};
    // internal certificate: j(w2/w1) must match the exact j-invariant
    {
        mpz_class c4 = E.c4();
        mpq_class jE(c4 * c4 * c4 * 1728, E.c4() * E.c4() * E.c4() - E.c6() * E.c6());
        jE.canonicalize();
        Cplx tau = w2 / w1;
        if (tau.im.sign() < 0) tau = -tau; // (w1, -w2) spans the same lattice
        Cplx jv = eval_j(tau, bits);
        Real err = cabs(jv - Cplx(Real::of_mpq(jE, prec), Real::of_si(0, prec)));
        Real scale = Real::of_si(1, prec) + rabs(Real::of_mpq(jE, prec));
        if (err > scale * Real::pow2(-bits / 2, prec))
            throw precision_exhausted("periods: j-invariant certificate failed");
    }
    return L;
}

// ---- tau from j ---------------------------------------------------------------

// Point in the standard fundamental domain with j(tau) = beta, via the
// period ratio of E_beta: y^2 + xy = x^3 - 36/(beta-1728) x - 1/(beta-1728).
// Self-certifying: the result is accepted only if eval_j round-trips.
inline Cplx tau_from_j(const Cplx& beta_in, long bits) {
    long prec = bits + 96;
    Cplx beta = at_prec(beta_in, prec);
    Real tolj = Real::pow2(-bits / 3, prec);
    // special values
    if (!(cabs(beta - Cplx::of_si(1728, 0, prec)) > tolj)) return Cplx::of_si(0, 1, prec);
    if (!(cabs(beta) > tolj)) {
        Real half = Real::of_double(-0.5, prec);
        Real s3 = rsqrt(Real::of_si(3, prec));
        return Cplx(half, rmul_2exp(s3, -1));
    }
    Cplx one = Cplx::of_si(1, 0, prec);
    Cplx den = beta - Cplx::of_si(1728, 0, prec);
    Cplx a4 = -(Cplx::of_si(36, 0, prec) / den);
    Cplx a6 = -(one / den);
    // b2 = 1, b4 = 2 a4, b6 = 4 a6, c4 = 1 - 48 a4, c6 = -1 + 72 a4 - 864 a6
    Cplx c4 = one - a4 * Real::of_si(48, prec);
    Cplx c6 = -one + a4 * Real::of_si(72, prec) - a6 * Real::of_si(864, prec);
    Cplx g2 = c4 / Real::of_si(12, prec);
    Cplx g3 = c6 / Real::of_si(216, prec);
    auto roots = detail::cubic_roots_4z3(g2, g3, prec);
    int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& pm : perms) {
        auto [w1, w2] = periods_from_roots(roots[pm[0]], roots[pm[1]], roots[pm[2]], prec);
        for (int which = 0; which < 2; ++which) {
            Cplx ratio = which == 0 ? (w1 / w2) : (w2 / w1);
            if (!(ratio.im > Real::of_si(0, prec))) continue;
            Cplx tau = reduce_to_fundamental_domain(ratio, prec).tau;
            Cplx jv = eval_j(tau, bits + 16);
            Real scale = Real::of_si(1, prec) + cabs(beta);
            if (!(cabs(jv - beta) > scale * tolj)) return tau;
        }
    }
    throw precision_exhausted("tau_from_j: no period ratio certified");
}

// ---- Hilbert class polynomials --------------------------------------------------

struct QuadForm {
    long a, b, c;
};

inline std::vector<QuadForm> reduced_forms(long D) {
    if (D >= 0 || (((-D) % 4) != 0 && ((-D) % 4) != 3))
        throw bad_input("reduced_forms: D must be negative and 0 or 1 mod 4");
    std::vector<QuadForm> out;
    long alim = (long)std::sqrt((double)(-D) / 3.0) + 1;
    for (long a = 1; a <= alim; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (gcd_i64(gcd_i64(a, b), c) != 1) continue; // primitive forms only
            out.push_back({a, b, c});
        }
    return out;
}

// H_D by evaluating j at the root of each reduced form and rounding; the
// rounding residual must stay below 0.01 or the precision is escalated.
inline UniPoly hilbert_class_poly(long D, long bits) {
    auto forms = reduced_forms(D);
    long h = (long)forms.size();
    for (long prec = std::max<long>(bits, 128);; prec *= 2) {
        if (prec > (1L << 16)) throw precision_exhausted("hilbert_class_poly: precision cap");
        Real sD = rsqrt(Real::of_si(-D, prec));
        std::vector<Cplx> poly(1, Cplx::of_si(1, 0, prec));
        for (auto& f : forms) {
            Cplx tau(Real::of_si(-f.b, prec) / Real::of_si(2 * f.a, prec),
                     sD / Real::of_si(2 * f.a, prec));
            Cplx jv = eval_j(tau, prec - 32);
            // poly *= (x - jv)
            std::vector<Cplx> pn(poly.size() + 1, Cplx::of_si(0, 0, prec));
            for (size_t i = 0; i < poly.size(); ++i) {
                pn[i + 1] = pn[i + 1] + poly[i];
                pn[i] = pn[i] - jv * poly[i];
            }
            poly = std::move(pn);
        }
        // round to integers
        UniPoly H;
        H.c.resize(poly.size());
        bool ok = true;
        Real worst = Real::of_si(0, prec);
        for (size_t i = 0; i < poly.size(); ++i) {
            if (rabs(poly[i].im) > Real::of_double(0.01, prec)) { ok = false; break; }
            mpz_class r = poly[i].re.round_to_mpz();
            Real resid = rabs(poly[i].re - Real::of_mpz(r, prec));
            if (resid > Real::of_double(0.01, prec)) { ok = false; break; }
            if (resid > worst) worst = resid;
            H.c[i] = r;
        }
        if (!ok) continue;
        H.normalize();
        if (H.degree() != h) continue;
        return H;
    }
}

} // namespace modparam

#endif
