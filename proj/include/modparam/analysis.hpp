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

#ifndef MODPARAM_ANALYSIS_HPP
#define MODPARAM_ANALYSIS_HPP

#include "modpoly.hpp"

namespace modparam {

// ---- fibers (Algorithm-2 style sweep) -----------------------------------------

struct FiberMember {
    bool is_cusp = false;
    Cusp cusp;
    Cplx tau;        // T-normalized representative for half-plane points
    Cplx jval, Jval; // j and J at the member
    CurvePoint value;
    Real residual = Real::of_si(0, 64);
    int multiplicity = 1;
    long jroot_index = -1;
};

struct FiberResult {
    Cplx alpha, beta;
    std::vector<FiberMember> members;
    std::vector<Cplx> jroots;
    std::vector<int> jroot_mult;
    std::vector<long> matched_by_j_only; // j-root indexes with no phi-verified hit
    long total_multiplicity() const {
        long s = 0;
        for (auto& m : members) s += m.multiplicity;
        return s;
    }
    long distinct_count() const { return (long)members.size(); }
};

namespace detail {

// roots (with multiplicity) of the specialization P(alpha, .) of an integer
// bivariate polynomial
struct SpecialRoots {
    std::vector<Cplx> roots;
    std::vector<int> mult;
    bool none = false; // specialized polynomial is a nonzero constant
};

inline SpecialRoots roots_of_specialization(const BivarPoly& P, const Cplx& alpha,
                                            const mpq_class* alpha_exact, long bits) {
    long prec = bits + 64;
    SpecialRoots out;
    if (alpha_exact) {
        UniPoly S = P.eval_first_rational(*alpha_exact);
        if (S.degree() < 1) {
            out.none = true;
            return out;
        }
        auto rr = complex_roots(S, bits);
        for (auto& r : rr) {
            out.roots.push_back(at_prec(r.z, prec));
            out.mult.push_back(r.multiplicity);
        }
        return out;
    }
    // complex specialization: Horner in alpha per j-power, then cluster
    std::vector<Cplx> coeffs((size_t)P.L + 1, Cplx(prec));
    for (long l = 0; l <= P.L; ++l) {
        Cplx acc = Cplx::of_si(0, 0, prec);
        for (long k = P.K; k >= 0; --k) {
            acc = acc * alpha;
            acc.re = acc.re + Real::of_mpz(P.at(k, l), prec);
        }
        coeffs[(size_t)l] = acc;
    }
    long deg = P.L;
    while (deg > 0 && cabs(coeffs[(size_t)deg]).to_double() < 1e-30) --deg;
    if (deg == 0) {
        out.none = true;
        return out;
    }
    coeffs.resize((size_t)deg + 1);
    auto cl = clustered_roots(coeffs, prec, Real::pow2(-bits / 3, 64));
    for (auto& c : cl) {
        out.roots.push_back(c.z);
        out.mult.push_back(c.count);
    }
    return out;
}

// Gamma_0(N)-canonical representative used for deduplication: raise the
// imaginary part, then normalize Re into [-1/2, 1/2)
inline Cplx canonical_rep(CurveContext& ctx, const Cplx& tau, long bits) {
    RaisedPoint rp = gamma_raise(ctx, tau, bits);
    Cplx t = rp.tau;
    mpz_class m = t.re.round_to_mpz();
    if (m != 0) t.re = t.re - Real::of_mpz(m, t.re.prec());
    return t;
}

inline bool same_point(const Cplx& a, const Cplx& b, long bits) {
    Real tol = Real::pow2(-bits / 4, 64);
    Real d1 = cabs(a - b);
    if (!(d1 > tol)) return true;
    // allow a unit horizontal wrap
    Cplx shift(Real::of_si(1, a.prec()), Real::of_si(0, a.prec()));
    if (!(cabs(a - b + shift) > tol)) return true;
    if (!(cabs(a - b - shift) > tol)) return true;
    return false;
}

} // namespace detail

// Fiber of phi over P = (alpha, beta): solve F(alpha, j) for candidate j's,
// filter coset translates by j(N tau) being a root of f(alpha, J), verify
// through phi, then append cusps whose value matches.  alpha_exact enables
// exact multiplicity bookkeeping for rational targets.
inline FiberResult fiber(CurveContext& ctx, const ModularPolynomial& F,
                         const ModularPolynomial& fN, const Cplx& alpha, const Cplx& beta,
                         long bits, const mpq_class* alpha_exact = nullptr,
                         const mpq_class* beta_exact = nullptr) {
    if (F.kind != PolyKind::F || fN.kind != PolyKind::f)
        throw bad_input("fiber: polynomials of kinds F and f are required");
    long prec = bits + 64;
    long N = ctx.E.N;
    FiberResult out;
    out.alpha = at_prec(alpha, prec);
    out.beta = at_prec(beta, prec);

    detail::SpecialRoots jr = detail::roots_of_specialization(F.poly, out.alpha, alpha_exact, bits);
    detail::SpecialRoots Zr = detail::roots_of_specialization(fN.poly, out.alpha, alpha_exact, bits);
    out.jroots = jr.roots;
    out.jroot_mult = jr.mult;

    Real jtol = Real::pow2(-bits / 3, 64);
    Real phitol = Real::pow2(-bits / 4, 64);
    auto reps = coset_reps(N);

    for (size_t i = 0; i < jr.roots.size() && !jr.none; ++i) {
        Cplx taui = tau_from_j(jr.roots[i], bits);
        std::vector<FiberMember> hits;
        for (auto& M : reps) {
            Cplx num = taui * Real::of_si((long)M.a, prec);
            num.re = num.re + Real::of_si((long)M.b, prec);
            Cplx den = taui * Real::of_si((long)M.c, prec);
            den.re = den.re + Real::of_si((long)M.d, prec);
            Cplx w = num / den;
            Cplx Jw = eval_J(w, N, bits);
            bool inZ = false;
            for (size_t z = 0; z < Zr.roots.size(); ++z) {
                Real sc = Real::of_si(1, prec) + cabs(Zr.roots[z]);
                if (!(cabs(Jw - Zr.roots[z]) > jtol * sc)) inZ = true;
            }
            if (!inZ) continue;
            CurvePoint val = phi_eval(ctx, w, bits);
            if (val.infinity) continue;
            Real r1 = cabs(val.x - out.alpha), r2 = cabs(val.y - out.beta);
            Real sc = Real::of_si(1, prec) + cabs(out.alpha) + cabs(out.beta);
            if (r1 > phitol * sc || r2 > phitol * sc) continue;
            FiberMember m;
            m.is_cusp = false;
            m.tau = detail::canonical_rep(ctx, w, bits);
            m.jval = jr.roots[i];
            m.Jval = Jw;
            m.value = val;
            m.residual = ubound_add(r1, r2);
            m.jroot_index = (long)i;
            // deduplicate against existing hits of this root
            bool dup = false;
            for (auto& h : hits)
                if (detail::same_point(h.tau, m.tau, bits)) dup = true;
            if (!dup) hits.push_back(std::move(m));
        }
        if (hits.empty()) {
            out.matched_by_j_only.push_back((long)i);
            continue;
        }
        // split the j-root multiplicity over the distinct verified points
        int mi = jr.mult[i];
        int each = std::max(1, (int)(mi / (long)hits.size()));
        for (auto& h : hits) {
            h.multiplicity = each;
            out.members.push_back(std::move(h));
        }
    }

    // cusp pass
    for (auto& c : cusp_list(N)) {
        CurvePoint val = phi_eval_cusp(ctx, c, bits);
        if (val.infinity) continue;
        Real r1 = cabs(val.x - out.alpha), r2 = cabs(val.y - out.beta);
        Real sc = Real::of_si(1, prec) + cabs(out.alpha) + cabs(out.beta);
        if (r1 > phitol * sc || r2 > phitol * sc) continue;
        FiberMember m;
        m.is_cusp = true;
        m.cusp = c;
        m.value = val;
        m.residual = ubound_add(r1, r2);
        m.multiplicity = 1;
        out.members.push_back(std::move(m));
    }

    // deterministic order: cusps (by denominator, numerator) then half-plane
    // points by the real part of j
    std::sort(out.members.begin(), out.members.end(), [](const FiberMember& a, const FiberMember& b) {
        if (a.is_cusp != b.is_cusp) return a.is_cusp;
        if (a.is_cusp) return a.cusp < b.cusp;
        int c = mpfr_cmp(a.jval.re.v, b.jval.re.v);
        if (c != 0) return c < 0;
        return mpfr_cmp(a.jval.im.v, b.jval.im.v) < 0;
    });
    (void)beta_exact;
    return out;
}

// modular degree via the fiber over generic points (two independent checks)
inline long modular_degree(CurveContext& ctx, const ModularPolynomial& F,
                           const ModularPolynomial& fN, long bits) {
    long prec = bits + 64;
    auto count_at = [&](double xr, double xi) {
        Cplx alpha(Real::of_double(xr, prec), Real::of_double(xi, prec));
        // beta from the curve equation: y^2 + (a1 x + a3)y - (x^3 + ...) = 0
        auto R = [&](const mpz_class& z) { return Cplx(Real::of_mpz(z, prec), Real::of_si(0, prec)); };
        Cplx bq = R(ctx.E.a1) * alpha + R(ctx.E.a3);
        Cplx cq = -(alpha * alpha * alpha + R(ctx.E.a2) * alpha * alpha + R(ctx.E.a4) * alpha +
                    R(ctx.E.a6));
        Cplx disc = bq * bq - cq * Real::of_si(4, prec);
        Cplx beta = (csqrt(disc) - bq) / Real::of_si(2, prec);
        FiberResult fr = fiber(ctx, F, fN, alpha, beta, bits);
        if (!fr.matched_by_j_only.empty())
            throw precision_exhausted("modular_degree: unverified fiber candidates at a generic point");
        return fr.total_multiplicity();
    };
    long d1 = count_at(0.37, 0.59);
    long d2 = count_at(-1.21, 0.83);
    if (d1 != d2)
        throw precision_exhausted("modular_degree: generic fibers disagree; raise the precision");
    return d1;
}

// ---- non-cuspidal poles (Algorithm 3) --------------------------------------------

struct PoleRep {
    Cplx tau;   // canonical representative
    Cplx jval;  // root of A_K
    int jroot_mult = 1;
    mpz_class lattice_m, lattice_n; // gamma(tau) = m w1 + n w2
};

inline std::vector<PoleRep> noncusp_poles(CurveContext& ctx, const ModularPolynomial& F, long bits) {
    if (F.kind != PolyKind::F) throw bad_input("noncusp_poles: kind-F polynomial required");
    long prec = bits + 64;
    std::vector<PoleRep> out;
    UniPoly AK = leading_coeff_in_x(F.poly.K >= 0 ? F : F); // A_K(j)
    AK = F.poly.lead_coeff_in_first();
    if (AK.degree() < 1) return out;
    auto roots = complex_roots(AK, bits);
    auto reps = coset_reps(ctx.E.N);
    Real tol = Real::pow2(-bits / 4, 64);
    for (auto& r : roots) {
        Cplx z = tau_from_j(r.z, bits);
        std::vector<Cplx> seen;
        for (auto& M : reps) {
            Cplx num = z * Real::of_si((long)M.a, prec);
            num.re = num.re + Real::of_si((long)M.b, prec);
            Cplx den = z * Real::of_si((long)M.c, prec);
            den.re = den.re + Real::of_si((long)M.d, prec);
            Cplx w = num / den;
            Cplx g = eichler_gamma(ctx, w, bits);
            mpz_class lm, ln;
            if (!lattice_member(g, ctx.lattice(bits), bits, &lm, &ln)) continue;
            Cplx canon = detail::canonical_rep(ctx, w, bits);
            bool dup = false;
            for (auto& s : seen)
                if (detail::same_point(s, canon, bits)) dup = true;
            if (dup) continue;
            seen.push_back(canon);
            PoleRep pr{canon, r.z, r.multiplicity, lm, ln};
            out.push_back(pr);
        }
        (void)tol;
    }
    std::sort(out.begin(), out.end(), [](const PoleRep& a, const PoleRep& b) {
        int c = mpfr_cmp(a.jval.re.v, b.jval.re.v);
        if (c != 0) return c < 0;
        c = mpfr_cmp(a.jval.im.v, b.jval.im.v);
        if (c != 0) return c < 0;
        return mpfr_cmp(a.tau.re.v, b.tau.re.v) < 0;
    });
    return out;
}

// ---- exact values at cusps (Algorithm 4) ------------------------------------------

struct CuspValue {
    Cusp cusp;
    bool infinity = true;
    bool exact = false;
    mpq_class x, y;   // when exact
    Cplx xa, ya;      // numeric value (finite case)
    CuspGamma gamma;
};

namespace detail {

// rational roots of an integer polynomial recovered from certified complex
// roots by rounding and exact re-checking
inline std::vector<mpq_class> rational_roots(const UniPoly& P, long bits) {
    std::vector<mpq_class> out;
    if (P.degree() < 1) return out;
    auto roots = complex_roots(P, bits);
    for (auto& r : roots) {
        if (rabs(r.z.im).to_double() > 1e-12) continue;
        // try small-denominator reconstruction of the real part
        for (long den = 1; den <= 64; ++den) {
            Real scaled = r.z.re * Real::of_si(den, r.z.re.prec());
            mpz_class num = scaled.round_to_mpz();
            Real resid = rabs(scaled - Real::of_mpz(num, scaled.prec()));
            if (resid.to_double() > 1e-12) continue;
            mpq_class cand(num, den);
            cand.canonicalize();
            // exact check
            mpq_class acc = 0, pw = 1;
            for (long i = 0; i <= P.degree(); ++i) {
                acc += mpq_class(P.coeff(i)) * pw;
                pw *= cand;
            }
            if (acc == 0) {
                bool fresh = true;
                for (auto& q : out)
                    if (q == cand) fresh = false;
                if (fresh) out.push_back(cand);
            }
            break;
        }
    }
    return out;
}

} // namespace detail

// Exact cusp values: candidates are on-curve pairs of roots of B_L(x) and of
// C(y) (the leading j-coefficients of F and G); each cusp's gamma is an exact
// rational combination of the periods, so lattice membership is an exact
// decision and finite values are matched against the candidate grid.
inline std::vector<CuspValue> cusp_values(CurveContext& ctx, const ModularPolynomial& F,
                                          const ModularPolynomial* G, long bits) {
    if (F.kind != PolyKind::F) throw bad_input("cusp_values: kind-F polynomial required");
    long prec = bits + 64;
    UniPoly BL = F.poly.lead_coeff_in_second();
    std::vector<CuspValue> out;
    bool all_infinite = BL.degree() < 1;
    if (!all_infinite && !G)
        throw bad_input("cusp_values: kind-G polynomial required when B_L has roots");

    struct Cand {
        bool exact;
        mpq_class x, y;
        Cplx xa, ya;
    };
    std::vector<Cand> cands;
    if (!all_infinite) {
        UniPoly CY = G->poly.lead_coeff_in_second();
        auto xroots = complex_roots(BL, bits);
        auto yroots = CY.degree() >= 1 ? complex_roots(CY, bits) : std::vector<CertifiedRoot>{};
        auto xrat = detail::rational_roots(BL, bits);
        auto yrat = CY.degree() >= 1 ? detail::rational_roots(CY, bits) : std::vector<mpq_class>{};
        // exact rational on-curve pairs first
        for (auto& xq : xrat)
            for (auto& yq : yrat)
                if (ctx.E.contains(xq, yq))
                    cands.push_back({true, xq, yq,
                                     Cplx(Real::of_mpq(xq, prec), Real::of_si(0, prec)),
                                     Cplx(Real::of_mpq(yq, prec), Real::of_si(0, prec))});
        // then numeric pairs not covered by the exact grid
        Real ctol = Real::pow2(-bits / 4, 64);
        for (auto& xr : xroots)
            for (auto& yr : yroots) {
                if (curve_residual(ctx.E, xr.z, yr.z) > ctol) continue;
                bool covered = false;
                for (auto& c : cands)
                    if (!(cabs(c.xa - xr.z) > ctol) && !(cabs(c.ya - yr.z) > ctol)) covered = true;
                if (!covered) cands.push_back({false, 0, 0, xr.z, yr.z});
            }
    }

    for (auto& c : cusp_list(ctx.E.N)) {
        CuspValue v;
        v.cusp = c;
        v.gamma = gamma_at_cusp(ctx, c, bits);
        if (v.gamma.lattice_point()) {
            v.infinity = true;
            out.push_back(v);
            continue;
        }
        if (all_infinite)
            throw precision_exhausted("cusp_values: B_L constant but a cusp has non-lattice gamma");
        CurvePoint P = phi_from_gamma(ctx, v.gamma.value, bits);
        if (P.infinity)
            throw precision_exhausted("cusp_values: inconsistent lattice decision");
        v.infinity = false;
        v.xa = P.x;
        v.ya = P.y;
        // match to the candidate grid
        long best = -1, second = -1;
        Real bd(64), sd(64);
        for (size_t i = 0; i < cands.size(); ++i) {
            Real d = ubound_add(cabs(P.x - cands[i].xa), cabs(P.y - cands[i].ya));
            if (best < 0 || d < bd) {
                second = best;
                sd = bd;
                best = (long)i;
                bd = d;
            } else if (second < 0 || d < sd) {
                second = (long)i;
                sd = d;
            }
        }
        Real mtol = Real::pow2(-bits / 4, 64) * (Real::of_si(1, prec) + cabs(P.x) + cabs(P.y));
        if (best < 0 || bd > mtol)
            throw precision_exhausted("cusp_values: finite cusp value matches no B_L root");
        if (second >= 0 && !(sd > rmul_2exp(bd, 4)) && !(sd > mtol))
            throw precision_exhausted("cusp_values: ambiguous candidate match; raise precision");
        v.exact = cands[(size_t)best].exact;
        if (v.exact) {
            v.x = cands[(size_t)best].x;
            v.y = cands[(size_t)best].y;
        }
        out.push_back(v);
    }
    return out;
}

} // namespace modparam

#endif
