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

#ifndef MODPARAM_MODPOLY_HPP
#define MODPARAM_MODPOLY_HPP

#include "eichler.hpp"
#include "linalg.hpp"
#include "taniyama.hpp"

namespace modparam {

// The four relation kinds: F (x vs j), f (x vs J), G (y vs j), g (y vs J).
enum class PolyKind { F, f, G, g };

inline const char* kind_name(PolyKind k) {
    switch (k) {
        case PolyKind::F: return "F";
        case PolyKind::f: return "f";
        case PolyKind::G: return "G";
        default: return "g";
    }
}
inline PolyKind kind_from_name(const std::string& s) {
    if (s == "F") return PolyKind::F;
    if (s == "f") return PolyKind::f;
    if (s == "G") return PolyKind::G;
    if (s == "g") return PolyKind::g;
    throw bad_input("unknown polynomial kind: " + s);
}
inline bool kind_uses_y(PolyKind k) { return k == PolyKind::G || k == PolyKind::g; }
inline bool kind_uses_bigJ(PolyKind k) { return k == PolyKind::f || k == PolyKind::g; }

struct ModularPolynomial {
    PolyKind kind = PolyKind::F;
    BivarPoly poly;
    long K = 0, L = 0;
    std::string curve_tag;
    long precision_used = 0; // q-precision of the verified relation
};

struct reducible_relation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BuildOptions {
    long bits = 256;
    long margin_rows = 64;
    int max_primes = 400;
    long exact_verify_max_unknowns = 500;
    int nthreads = 2;
    bool try_halving = true;
    long force_K = 0, force_L = 0; // skip the bidegree search when both set
};

namespace detail {

struct KindShape {
    long vx;  // pole order of the x/y series at oo
    long vb;  // pole order of j (1) or J (N)
};

inline KindShape kind_shape(PolyKind k, long N) {
    return {kind_uses_y(k) ? 3L : 2L, kind_uses_bigJ(k) ? N : 1L};
}

// positive-exponent precision required for a (K, L) system with a margin of
// surplus verification rows
inline long required_mpos(PolyKind k, long N, long K, long L, long margin) {
    KindShape sh = kind_shape(k, N);
    long unknowns = (K + 1) * (L + 1);
    long m = unknowns + margin - (sh.vx * K + sh.vb * L) - 1;
    return std::max(m, 32L);
}

// newform coefficients needed to expand the base series to full depth
inline long required_an(PolyKind k, long N, long K, long L, long margin) {
    KindShape sh = kind_shape(k, N);
    return required_mpos(k, N, K, L, margin) + sh.vx * K + sh.vb * L + 24;
}

// the two q-expansions of a kind over Z/p
struct KindSeriesZp {
    LaurentSeries<Fp> xy;
    LaurentSeries<Fp> jJ;
};

// base expansions deep enough that every product x^k jJ^l (k <= K, l <= L)
// is justified through q^mpos
inline KindSeriesZp kind_series_mod_p(const CurveContext& ctx, PolyKind kind, long K, long L,
                                      long mpos, u64 p) {
    Fp rg(p);
    KindShape sh = kind_shape(kind, ctx.E.N);
    long depth = mpos + sh.vx * K + sh.vb * L;
    KindSeriesZp out;
    TaniyamaSeries<Fp> T = taniyama_series_ring(rg, ctx.E, ctx.an, depth + 1);
    out.xy = kind_uses_y(kind) ? T.yq : T.xq;
    if (kind_uses_bigJ(kind)) {
        long N = ctx.E.N;
        LaurentSeries<Fp> j = j_series_ring(rg, depth / N + 2);
        out.jJ = series_compose_qN(j, N);
        out.jJ.truncate(depth);
    } else {
        out.jJ = j_series_ring(rg, depth);
    }
    return out;
}

// rows n_min..mpos of the coefficient system for columns (k, l) -> x^k jJ^l
inline void fill_kind_matrix(const CurveContext& ctx, PolyKind kind, long K, long L, long mpos,
                             u64 p, std::vector<u64>& data, long& rows, long& cols) {
    KindShape sh = kind_shape(kind, ctx.E.N);
    long n_min = -(sh.vx * K + sh.vb * L);
    rows = mpos - n_min + 1;
    cols = (K + 1) * (L + 1);
    data.assign((size_t)rows * (size_t)cols, 0);
    KindSeriesZp S = kind_series_mod_p(ctx, kind, K, L, mpos, p);
    LaurentSeries<Fp> xk = LaurentSeries<Fp>::one(S.xy.ring, S.xy.prec + 2);
    for (long k = 0; k <= K; ++k) {
        if (k > 0) {
            xk = series_mul(xk, S.xy);
            // headroom for the x-powers still to come and all jJ powers
            xk.truncate(mpos + sh.vb * L + sh.vx * (K - k));
        }
        LaurentSeries<Fp> cur = xk;
        for (long l = 0; l <= L; ++l) {
            if (l > 0) {
                cur = series_mul(cur, S.jJ);
                cur.truncate(mpos + sh.vb * (L - l));
            }
            if (cur.prec < mpos)
                throw std::runtime_error("fill_kind_matrix: product precision shortfall");
            long col = k * (L + 1) + l;
            for (long n = std::max(cur.val, n_min); n <= mpos; ++n) {
                u64 c = cur.coeff(n);
                if (c) data[(size_t)(n - n_min) * (size_t)cols + (size_t)col] = c;
            }
        }
    }
}

// kernel dimension of the (K, L) system mod p
inline long probe_kernel_dim(const CurveContext& ctx, PolyKind kind, long K, long L, long margin,
                             u64 p) {
    long mpos = required_mpos(kind, ctx.E.N, K, L, margin);
    std::vector<u64> data;
    long rows = 0, cols = 0;
    fill_kind_matrix(ctx, kind, K, L, mpos, p, data, rows, cols);
    ZpKernel k = zp_kernel(data, rows, cols, p, false);
    return cols - k.rank;
}

// substitute the q-expansions into the candidate polynomial over Z/p and
// test that the relation vanishes to the full precision
inline bool relation_vanishes_mod_p(const CurveContext& ctx, PolyKind kind, const BivarPoly& P,
                                    long mpos, u64 p) {
    Fp rg(p);
    KindSeriesZp S = kind_series_mod_p(ctx, kind, P.K, P.L, mpos, p);
    KindShape sh = kind_shape(kind, ctx.E.N);
    // powers of the x/y series with headroom for the jJ Horner loop
    std::vector<LaurentSeries<Fp>> pw((size_t)P.K + 1);
    pw[0] = LaurentSeries<Fp>::one(rg, S.xy.prec + 2);
    for (long k = 1; k <= P.K; ++k) {
        pw[(size_t)k] = series_mul(pw[(size_t)(k - 1)], S.xy);
        pw[(size_t)k].truncate(mpos + sh.vb * P.L + sh.vx * (P.K - k));
    }
    long vmin = -(sh.vx * P.K + sh.vb * P.L);
    LaurentSeries<Fp> acc = LaurentSeries<Fp>::zero(rg, mpos + sh.vb * P.L);
    for (long l = P.L; l >= 0; --l) {
        if (l < P.L) acc = series_mul(acc, S.jJ);
        LaurentSeries<Fp> Bl(rg, vmin, mpos + sh.vb * l);
        bool any = false;
        for (long k = 0; k <= P.K; ++k) {
            u64 c = mpz_mod_u64(P.at(k, l), p);
            if (!c) continue;
            any = true;
            const auto& xk = pw[(size_t)k];
            for (long n = xk.val; n <= std::min(xk.prec, Bl.prec); ++n)
                Bl.a[(size_t)(n - vmin)] = addmod(Bl.a[(size_t)(n - vmin)],
                                                  mulmod(c, xk.coeff(n), p), p);
        }
        if (any) {
            Bl.normalize();
            acc = series_add(acc, Bl);
        }
    }
    if (acc.prec < mpos) throw std::runtime_error("relation_vanishes_mod_p: precision shortfall");
    acc.truncate(mpos);
    return series_is_zero_to_prec(acc);
}

// exact-rational mirror of the modular verification
inline bool relation_vanishes_exact(const CurveContext& ctx, PolyKind kind, const BivarPoly& P,
                                    long mpos) {
    QQ rg;
    KindShape sh = kind_shape(kind, ctx.E.N);
    long depth = mpos + sh.vx * P.K + sh.vb * P.L;
    if (ctx.an.M < depth + 9)
        throw bad_input("relation_vanishes_exact: extend the newform coefficients first");
    TaniyamaSeries<QQ> T = taniyama_series_ring(rg, ctx.E, ctx.an, depth + 1);
    LaurentSeries<QQ> xy = kind_uses_y(kind) ? T.yq : T.xq;
    LaurentSeries<QQ> jJ;
    if (kind_uses_bigJ(kind)) {
        jJ = series_compose_qN(j_series(depth / ctx.E.N + 2), ctx.E.N);
        jJ.truncate(depth);
    } else {
        jJ = j_series(depth);
    }
    std::vector<LaurentSeries<QQ>> pw((size_t)P.K + 1);
    pw[0] = LaurentSeries<QQ>::one(rg, depth + 2);
    for (long k = 1; k <= P.K; ++k) {
        pw[(size_t)k] = series_mul(pw[(size_t)(k - 1)], xy);
        pw[(size_t)k].truncate(mpos + sh.vb * P.L + sh.vx * (P.K - k));
    }
    LaurentSeries<QQ> acc = LaurentSeries<QQ>::zero(rg, mpos + sh.vb * P.L);
    for (long l = P.L; l >= 0; --l) {
        if (l < P.L) acc = series_mul(acc, jJ);
        LaurentSeries<QQ> Bl = LaurentSeries<QQ>::zero(rg, mpos + sh.vb * l);
        for (long k = 0; k <= P.K; ++k) {
            if (P.at(k, l) == 0) continue;
            Bl = series_add(Bl, series_scale(pw[(size_t)k], mpq_class(P.at(k, l))));
        }
        acc = series_add(acc, Bl);
    }
    if (acc.prec < mpos) throw std::runtime_error("relation_vanishes_exact: precision shortfall");
    acc.truncate(mpos);
    return series_is_zero_to_prec(acc);
}

} // namespace detail

// Initial degree bounds: K0 = mu and L0 = 2d (Proposition 2.1 shape); d is
// caller-supplied here, the analysis layer computes it from a generic fiber.
struct DegreeBounds {
    long mu, d, K0, L0;
};

inline DegreeBounds degree_bounds(const EllipticCurve& E, long d) {
    if (d < 1) throw bad_input("degree_bounds: modular degree must be >= 1");
    long mu = index_mu(E.N);
    return {mu, d, mu, 2 * d};
}

// Minimal-bidegree relation between the parametrization series and the
// modular invariant: scan L upward at the K cap (Proposition 8.3 halves the
// cap for kind F when gamma(2/N) lies in the lattice), then binary-search the
// minimal K, then reconstruct the canonical kernel vector multimodularly and
// certify the relation by substitution.
inline ModularPolynomial build_modular_polynomial(CurveContext& ctx, PolyKind kind,
                                                  const BuildOptions& opt = {}) {
    long N = ctx.E.N;
    long mu = ctx.mu;
    PrimeStream probe_stream((1ULL << 58) + 1);
    u64 p1 = probe_stream.next(), p2 = probe_stream.next();

    long Kcap = mu;
    if (opt.try_halving && kind == PolyKind::F && N % 4 == 0) {
        try {
            CuspGamma cg = gamma_at_cusp(ctx, Cusp(2, N), opt.bits);
            if (cg.lattice_point()) Kcap = mu / 2;
        } catch (const std::exception&) {
            // keep the full cap
        }
    }

    long Kstar = 0, Lstar = 0;
    if (opt.force_K > 0 && opt.force_L > 0) {
        Kstar = opt.force_K;
        Lstar = opt.force_L;
    } else {
        // pre-extend newform coefficients for the largest probe
        ctx.ensure_an(detail::required_an(kind, N, Kcap, 3, opt.margin_rows));
        for (long Lc = 1; Lc <= 3 * mu; ++Lc) {
            ctx.ensure_an(detail::required_an(kind, N, Kcap, Lc, opt.margin_rows));
            long dim = detail::probe_kernel_dim(ctx, kind, Kcap, Lc, opt.margin_rows, p1);
            if (dim > 0 && detail::probe_kernel_dim(ctx, kind, Kcap, Lc, opt.margin_rows, p2) > 0) {
                Lstar = Lc;
                break;
            }
        }
        if (Lstar == 0) {
            if (Kcap < mu) {
                // halved cap was too optimistic; retry at the full index
                BuildOptions o2 = opt;
                o2.try_halving = false;
                return build_modular_polynomial(ctx, kind, o2);
            }
            throw precision_exhausted("build_modular_polynomial: no relation up to the degree caps");
        }
        // smallest K with a nontrivial kernel at L*; the failing probes of the
        // binary search are rigorous (a kernel trivial mod one prime is
        // trivial over Q), the succeeding ones are cross-checked with p2
        long lo = 1, hi = Kcap;
        while (lo < hi) {
            long mid = lo + (hi - lo) / 2;
            long dim = detail::probe_kernel_dim(ctx, kind, mid, Lstar, opt.margin_rows, p1);
            if (dim > 0) hi = mid;
            else lo = mid + 1;
        }
        Kstar = lo;
        while (Kstar < Kcap &&
               detail::probe_kernel_dim(ctx, kind, Kstar, Lstar, opt.margin_rows, p2) == 0)
            ++Kstar; // p1 produced a spurious kernel; exceedingly rare
    }

    long mpos = detail::required_mpos(kind, N, Kstar, Lstar, opt.margin_rows);
    ctx.ensure_an(detail::required_an(kind, N, Kstar, Lstar, opt.margin_rows));

    ModularPolynomial out;
    out.kind = kind;
    out.K = Kstar;
    out.L = Lstar;
    out.curve_tag = ctx.E.tag();
    out.precision_used = mpos;

    const CurveContext& cctx = ctx;
    MatGen gen = [&cctx, kind, Kstar, Lstar, mpos](u64 p, std::vector<u64>& data, long& rows,
                                                   long& cols) {
        detail::fill_kind_matrix(cctx, kind, Kstar, Lstar, mpos, p, data, rows, cols);
    };

    PrimeStream verify_stream((1ULL << 59) + 1);
    u64 vp1 = verify_stream.next(), vp2 = verify_stream.next(), vp3 = verify_stream.next();

    auto verify = [&](const RatKernel& ker) -> bool {
        if (ker.basis.size() != 1) return false;
        const auto& v = ker.basis[0];
        // clear denominators, normalize content and sign
        mpz_class lcm = 1;
        for (auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
        BivarPoly P(Kstar, Lstar);
        for (long k = 0; k <= Kstar; ++k)
            for (long l = 0; l <= Lstar; ++l) {
                mpq_class c = v[(size_t)(k * (Lstar + 1) + l)] * mpq_class(lcm);
                c.canonicalize();
                P.at(k, l) = c.get_num();
            }
        P.normalize_content_sign();
        if (P.is_zero()) return false;
        if (P.K != Kstar || P.L != Lstar) return false; // attained degrees must match
        bool ok;
        if ((Kstar + 1) * (Lstar + 1) <= opt.exact_verify_max_unknowns) {
            ok = detail::relation_vanishes_exact(ctx, kind, P, mpos);
        } else {
            ok = detail::relation_vanishes_mod_p(cctx, kind, P, mpos, vp1) &&
                 detail::relation_vanishes_mod_p(cctx, kind, P, mpos, vp2) &&
                 detail::relation_vanishes_mod_p(cctx, kind, P, mpos, vp3);
        }
        if (ok) out.poly = P;
        return ok;
    };

    RatKernel ker = multimodular_kernel(gen, opt.max_primes, verify, opt.nthreads);
    if (ker.basis.size() != 1)
        throw reducible_relation("build_modular_polynomial: kernel dimension exceeds 1 at the "
                                 "minimal bidegree (reducible relation)");
    return out;
}

// expansion blocks of Eq.-type sum A_k(j) x^k = sum B_l(x) j^l
inline UniPoly leading_coeff_in_x(const ModularPolynomial& M) { return M.poly.lead_coeff_in_first(); }
inline UniPoly leading_coeff_in_j(const ModularPolynomial& M) { return M.poly.lead_coeff_in_second(); }

} // namespace modparam

#endif
