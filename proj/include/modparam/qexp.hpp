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

#ifndef MODPARAM_QEXP_HPP
#define MODPARAM_QEXP_HPP

#include "series.hpp"

namespace modparam {

// Euler product prod_{n>=1} (1 - q^n) via the pentagonal number theorem.
template <class R>
LaurentSeries<R> euler_product_series(R rg, long M) {
    LaurentSeries<R> s(rg, 0, M);
    for (long k = 0;; ++k) {
        long e1 = k * (3 * k - 1) / 2;
        long e2 = k * (3 * k + 1) / 2;
        if (e1 > M && e2 > M) break;
        typename R::elem sgn = (k % 2 == 0) ? rg.one() : rg.neg(rg.one());
        if (e1 <= M) s.a[(size_t)e1] = sgn;
        if (k > 0 && e2 <= M) s.a[(size_t)e2] = sgn;
    }
    return s;
}

template <class R>
LaurentSeries<R> eisenstein_e4_series(R rg, long M) {
    LaurentSeries<R> s(rg, 0, M);
    s.a[0] = rg.one();
    std::vector<mpz_class> sig((size_t)M + 1, 0);
    for (long d = 1; d <= M; ++d) {
        mpz_class d3 = mpz_class(d) * d * d;
        for (long n = d; n <= M; n += d) sig[(size_t)n] += d3;
    }
    for (long n = 1; n <= M; ++n)
        s.a[(size_t)n] = rg.from_mpz(mpz_class(240) * sig[(size_t)n]);
    return s;
}

// Delta = q * prod (1-q^n)^24
template <class R>
LaurentSeries<R> delta_series(R rg, long M) {
    LaurentSeries<R> P = euler_product_series(rg, M - 1);
    LaurentSeries<R> P2 = series_mul(P, P);
    LaurentSeries<R> P4 = series_mul(P2, P2);
    LaurentSeries<R> P8 = series_mul(P4, P4);
    LaurentSeries<R> P16 = series_mul(P8, P8);
    LaurentSeries<R> P24 = series_mul(P16, P8);
    LaurentSeries<R> q = LaurentSeries<R>::monomial(rg, rg.one(), 1, M);
    return series_mul(q, P24);
}

// j = E4^3 / Delta = q^{-1} + 744 + 196884 q + ...
template <class R>
LaurentSeries<R> j_series_ring(R rg, long M) {
    if (M < 0) throw bad_input("j_series: precision must be >= 0");
    long W = M + 2; // work a little beyond the requested precision
    LaurentSeries<R> E4 = eisenstein_e4_series(rg, W);
    LaurentSeries<R> E43 = series_mul(series_mul(E4, E4), E4);
    LaurentSeries<R> D = delta_series(rg, W);
    LaurentSeries<R> j = series_div(E43, D);
    j.truncate(M);
    return j;
}

inline LaurentSeries<QQ> j_series(long M) { return j_series_ring(QQ{}, M); }

// Generalized eta product for level N and residue g:
//   q-part prod_{n>=1} (1 - q^{N(n-1)+g}) (1 - q^{Nn-g}),
// with the fractional prefactor exponent N*B2(g/N)/2 carried separately
// as an exact rational tag (B2(t) = t^2 - t + 1/6).
template <class R>
struct GeneralizedEta {
    LaurentSeries<R> qpart;
    mpq_class exponent; // prefactor is q^exponent
};

template <class R>
GeneralizedEta<R> generalized_eta_series_ring(R rg, long N, long g, long M) {
    if (g < 1 || g >= N) throw bad_input("generalized_eta_series: need 1 <= g < N");
    if (M < 0) throw bad_input("generalized_eta_series: precision must be >= 0");
    LaurentSeries<R> s = LaurentSeries<R>::one(rg, M);
    // multiply the truncated product by each sparse binomial (1 - q^e)
    auto mul_binomial = [&](long e) {
        if (e > M) return;
        // s -= q^e * s, in place, descending so updates do not feed themselves
        for (long n = M; n >= s.val + e; --n) {
            typename R::elem c = s.coeff(n - e);
            if (rg.is_zero(c)) continue;
            if (n > s.prec) continue;
            if (n < s.val) continue;
            s.a[(size_t)(n - s.val)] = rg.sub(s.a[(size_t)(n - s.val)], c);
        }
    };
    for (long n = 1;; ++n) {
        long e1 = N * (n - 1) + g;
        long e2 = N * n - g;
        if (e1 > M && e2 > M) break;
        mul_binomial(e1);
        mul_binomial(e2);
    }
    GeneralizedEta<R> r;
    r.qpart = s;
    mpq_class t(g, N);
    t.canonicalize();
    r.exponent = mpq_class(N) * (t * t - t + mpq_class(1, 6)) / 2;
    r.exponent.canonicalize();
    return r;
}

inline GeneralizedEta<QQ> generalized_eta_series(long N, long g, long M) {
    return generalized_eta_series_ring(QQ{}, N, g, M);
}

// Classical eta quotient prod_d eta(d*tau)^{r_d} as a q-series; the caller
// is responsible for the total eta-exponent sum(d*r_d)/24 being integral.
template <class R>
LaurentSeries<R> eta_quotient_series(R rg, const std::vector<std::pair<long, long>>& factors, long M) {
    mpq_class e(0);
    for (auto& [d, r] : factors) e += mpq_class(d * r, 24);
    e.canonicalize();
    if (e.get_den() != 1) throw bad_input("eta_quotient_series: fractional q-valuation");
    long shift = (long)e.get_num().get_si();
    LaurentSeries<R> s = LaurentSeries<R>::one(rg, M - shift);
    for (auto& [d, r] : factors) {
        LaurentSeries<R> P = euler_product_series(rg, M - shift);
        P = series_compose_qN(P, d);
        P.truncate(M - shift);
        long k = r >= 0 ? r : -r;
        LaurentSeries<R> Pk = LaurentSeries<R>::one(rg, M - shift);
        for (long i = 0; i < k; ++i) Pk = series_mul(Pk, P);
        Pk.truncate(M - shift);
        s = (r >= 0) ? series_mul(s, Pk) : series_div(s, Pk);
        s.truncate(M - shift);
    }
    LaurentSeries<R> q = LaurentSeries<R>::monomial(rg, rg.one(), shift, M);
    return series_mul(q, s);
}

} // namespace modparam

#endif
