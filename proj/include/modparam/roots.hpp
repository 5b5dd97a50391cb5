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

#ifndef MODPARAM_ROOTS_HPP
#define MODPARAM_ROOTS_HPP

#include "cplx.hpp"
#include "polynomial.hpp"

namespace modparam {

namespace detail {

inline Cplx horner(const std::vector<Cplx>& c, const Cplx& z) {
    Cplx r = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) r = r * z + c[i];
    return r;
}

inline void horner_pair(const std::vector<Cplx>& c, const Cplx& z, Cplx& p, Cplx& dp) {
    long prec = z.prec();
    p = c.back();
    dp = Cplx::of_si(0, 0, prec);
    for (size_t i = c.size() - 1; i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
}

} // namespace detail

// Aberth-Ehrlich simultaneous iteration on a polynomial with complex
// coefficients (ascending).  The polynomial should have no root repeated
// to working accuracy; callers handle multiplicity via squarefree
// decomposition or clustering.
inline std::vector<Cplx> aberth_roots(const std::vector<Cplx>& coeffs_in, long prec) {
    std::vector<Cplx> c = coeffs_in;
    while (!c.empty() && cabs(c.back()).is_zero()) c.pop_back();
    if (c.size() < 2) return {};
    long n = (long)c.size() - 1;
    for (auto& w : c) w = at_prec(w, prec);

    // Cauchy-style initial radius
    Real R = Real::of_si(0, prec);
    Real lc = cabs(c.back());
    for (long i = 0; i < n; ++i) {
        Real t = cabs(c[(size_t)i]) / lc;
        if (t > R) R = t;
    }
    R = R + Real::of_si(1, prec);

    std::vector<Cplx> z((size_t)n, Cplx(prec));
    {
        Real twopi = rmul_2exp(Real::pi(prec), 1);
        for (long k = 0; k < n; ++k) {
            Real ang = twopi * (Real::of_si(k, prec) / Real::of_si(n, prec) + Real::of_double(0.2638, prec));
            Real s(prec), co(prec);
            rsincos(s, co, ang);
            Real rr = R * Real::of_double(0.6180339887, prec);
            z[(size_t)k] = Cplx(rr * co, rr * s);
        }
    }

    Real tol = Real::pow2(-(prec * 2) / 3, prec);
    long max_iter = 120 + 12 * n;
    for (long it = 0; it < max_iter; ++it) {
        Real worst = Real::of_si(0, prec);
        for (long i = 0; i < n; ++i) {
            Cplx p(prec), dp(prec);
            detail::horner_pair(c, z[(size_t)i], p, dp);
            if (cabs(p).is_zero()) continue;
            Cplx w(prec);
            if (cabs(dp).is_zero()) {
                w = Cplx(Real::pow2(-8, prec), Real::pow2(-9, prec)); // nudge off a critical point
            } else {
                w = p / dp;
            }
            Cplx S = Cplx::of_si(0, 0, prec);
            for (long j = 0; j < n; ++j) {
                if (j == i) continue;
                Cplx d = z[(size_t)i] - z[(size_t)j];
                if (cabs(d).is_zero())
                    d = Cplx(Real::pow2(-prec / 2, prec), Real::pow2(-prec / 2 - 1, prec));
                S = S + Cplx::of_si(1, 0, prec) / d;
            }
            Cplx denom = Cplx::of_si(1, 0, prec) - w * S;
            Cplx corr = cabs(denom).is_zero() ? w : w / denom;
            z[(size_t)i] = z[(size_t)i] - corr;
            Real rel = cabs(corr) / (Real::of_si(1, prec) + cabs(z[(size_t)i]));
            if (rel > worst) worst = rel;
        }
        if (!(worst > tol)) break;
    }
    return z;
}

struct CertifiedRoot {
    Cplx z;
    Real radius;     // certified inclusion radius
    int multiplicity = 1;
};

// All complex roots of an exact integer polynomial with certified radii at
// most 2^{-bits/2}; multiplicities come from Yun's squarefree decomposition
// and the disks are pairwise disjoint inclusion disks on each squarefree
// factor (deg-many disjoint disks each holding at least one root hold
// exactly one).
inline std::vector<CertifiedRoot> complex_roots(const UniPoly& P, long bits) {
    if (P.degree() < 1) throw bad_input("complex_roots: degree must be >= 1");
    auto dec = squarefree_decomposition(P);
    std::vector<CertifiedRoot> out;
    Real target = Real::pow2(-bits / 2, 64);

    for (auto& [fac, mult] : dec) {
        long n = fac.degree();
        if (n == 0) continue;
        long prec = std::max<long>(128, bits);
        for (int attempt = 0; attempt < 8; ++attempt, prec *= 2) {
            std::vector<Cplx> cc((size_t)n + 1, Cplx(prec));
            for (long i = 0; i <= n; ++i)
                cc[(size_t)i] = Cplx(Real::of_mpz(fac.coeff(i), prec), Real::of_si(0, prec));
            std::vector<Cplx> zs = aberth_roots(cc, prec);
            if ((long)zs.size() != n) continue;
            // certification: r_i = n |p(z)| / |p'(z)| bounds distance to a root
            std::vector<CertifiedRoot> cand;
            bool ok = true;
            for (auto& zz : zs) {
                CBall z = CBall::exact(zz);
                CBall p(prec), dp(prec);
                // ball Horner for p and p'
                p = CBall::exact(cc.back());
                dp = CBall(Cplx::of_si(0, 0, prec), Real::of_si(0, 64));
                for (size_t i = cc.size() - 1; i-- > 0;) {
                    dp = dp * z + p;
                    p = p * z + CBall::exact(cc[i]);
                }
                Real pu = ubound_add(ubound_abs(p.mid), p.rad);
                Real dplo(64);
                mpfr_hypot(dplo.v, dp.mid.re.v, dp.mid.im.v, MPFR_RNDD);
                mpfr_sub(dplo.v, dplo.v, dp.rad.v, MPFR_RNDD);
                if (!(dplo > Real::of_si(0, 64))) { ok = false; break; }
                Real rad(64);
                mpfr_div(rad.v, pu.v, dplo.v, MPFR_RNDU);
                mpfr_mul_si(rad.v, rad.v, n, MPFR_RNDU);
                if (rad > target) { ok = false; break; }
                cand.push_back(CertifiedRoot{zz, rad, mult});
            }
            if (!ok) continue;
            // pairwise disjointness makes the disks isolating
            for (size_t i = 0; i < cand.size() && ok; ++i)
                for (size_t j = i + 1; j < cand.size() && ok; ++j) {
                    Real d = cabs(cand[i].z - cand[j].z);
                    if (!(d > ubound_add(cand[i].radius, cand[j].radius))) ok = false;
                }
            if (!ok) continue;
            for (auto& r : cand) out.push_back(r);
            break;
        }
    }
    long total = 0;
    for (auto& r : out) total += r.multiplicity;
    if (total != P.degree())
        throw precision_exhausted("complex_roots: certification failed");
    return out;
}

// roots of a complex-coefficient polynomial with near-equal roots merged
// into clusters; used where coefficients are themselves approximate
struct ClusteredRoot {
    Cplx z;
    int count = 1;
};

inline std::vector<ClusteredRoot> clustered_roots(const std::vector<Cplx>& coeffs, long prec,
                                                  const Real& cluster_tol) {
    std::vector<Cplx> zs = aberth_roots(coeffs, prec);
    std::vector<ClusteredRoot> out;
    std::vector<bool> used(zs.size(), false);
    for (size_t i = 0; i < zs.size(); ++i) {
        if (used[i]) continue;
        ClusteredRoot c{zs[i], 1};
        Cplx sum = zs[i];
        for (size_t j = i + 1; j < zs.size(); ++j) {
            if (used[j]) continue;
            if (!(cabs(zs[i] - zs[j]) > cluster_tol)) {
                used[j] = true;
                sum = sum + zs[j];
                ++c.count;
            }
        }
        if (c.count > 1) c.z = sum / Real::of_si(c.count, prec);
        out.push_back(c);
    }
    return out;
}

} // namespace modparam

#endif
