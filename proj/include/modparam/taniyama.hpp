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

#ifndef MODPARAM_TANIYAMA_HPP
#define MODPARAM_TANIYAMA_HPP

#include "curve.hpp"

namespace modparam {

// q-expansions x(q) = q^-2 + ..., y(q) = -q^-3 + ... of the modular
// parametrization, solved from the pullback of the invariant differential,
//     q dx/dq = f(q) (2y + a1 x + a3),
// combined with the curve equation.  Squaring eliminates y:
//     (q dx/dq)^2 = f^2 (4x^3 + b2 x^2 + 2 b4 x + b6),
// which is solved blockwise: each block recomputes the full residual and
// then extends x through the linearization
//     dR = 2(qx') (q dx') - f^2 (12x^2 + 2 b2 x + 2 b4) dx,
// whose triangular structure yields one new coefficient per row with pivot
// -4(i+3) on x_i.  Quadratic terms in the correction stay beyond the block
// window as long as the block size is at most (known top index) + 1.
template <class R>
struct TaniyamaSeries {
    LaurentSeries<R> xq; // valuation -2, leading coefficient 1
    LaurentSeries<R> yq; // valuation -3, leading coefficient -1
};

namespace detail {

// raw Laurent-polynomial convolution capped at exponent <= cap
template <class R>
std::vector<typename R::elem> polymul_cap(const R& rg,
                                          const std::vector<typename R::elem>& a, long aoff,
                                          const std::vector<typename R::elem>& b, long boff,
                                          long cap, long& coff) {
    coff = aoff + boff;
    long len = std::min((long)a.size() + (long)b.size() - 1, cap - coff + 1);
    std::vector<typename R::elem> c;
    if (len <= 0) { coff = cap + 1; return c; }
    c.assign((size_t)len, rg.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (rg.is_zero(a[i])) continue;
        size_t jmax = std::min(b.size(), (size_t)std::max(0L, len - (long)i));
        for (size_t j = 0; j < jmax; ++j)
            rg.addmul_inplace(c[i + j], a[i], b[j]);
    }
    return c;
}

} // namespace detail

template <class R>
TaniyamaSeries<R> taniyama_series_ring(R rg, const EllipticCurve& E, const NewformSeries& fM, long M) {
    if (M < 1) throw bad_input("taniyama_series: M must be >= 1");
    if (fM.M < M + 8) throw bad_input("taniyama_series: newform precision too low");
    using elem = typename R::elem;

    const elem b2 = rg.from_mpz(E.b2()), b4 = rg.from_mpz(E.b4()), b6 = rg.from_mpz(E.b6());
    const elem c12 = rg.from_si(12), c4 = rg.from_si(4), c2 = rg.from_si(2);

    long cap = M + 2; // compute x a little past M so y reaches M
    // f and f^2 as raw vectors with offsets
    std::vector<elem> f; // offset 1
    f.reserve((size_t)(cap + 8));
    for (long n = 1; n <= cap + 6; ++n) f.push_back(rg.from_si((long)fM.at(n)));
    long f2off;
    std::vector<elem> f2 = detail::polymul_cap(rg, f, 1, f, 1, cap + 4, f2off);

    std::vector<elem> xs; // offset -2; xs[i] = coefficient of q^{i-2}
    xs.push_back(rg.one());
    long top = -2; // highest known exponent

    while (top < cap) {
        long B = std::min(cap - top, std::max(1L, top + 1));
        long rows_hi = top + B - 2;
        // qx' and W = 2 qx'
        std::vector<elem> qdx(xs.size());
        for (size_t i = 0; i < xs.size(); ++i) qdx[i] = rg.mul(xs[i], rg.from_si(-2 + (long)i));
        std::vector<elem> W(qdx.size());
        for (size_t i = 0; i < qdx.size(); ++i) W[i] = rg.mul(c2, qdx[i]);
        // S = 4x^3 + b2 x^2 + 2 b4 x + b6
        long x2off, x3off;
        std::vector<elem> x2 = detail::polymul_cap(rg, xs, -2, xs, -2, rows_hi + 6, x2off);
        std::vector<elem> x3 = detail::polymul_cap(rg, x2, x2off, xs, -2, rows_hi + 2, x3off);
        auto get = [&](const std::vector<elem>& v, long off, long n) -> elem {
            long i = n - off;
            if (i < 0 || i >= (long)v.size()) return rg.zero();
            return v[(size_t)i];
        };
        // residual R = (qx')^2 - f^2 * S, rows -4 .. rows_hi
        long t1off, sfoff;
        std::vector<elem> t1 = detail::polymul_cap(rg, qdx, -2, qdx, -2, rows_hi, t1off);
        std::vector<elem> S;
        long Soff = -6;
        S.assign((size_t)(rows_hi - 2 - Soff + 1), rg.zero());
        for (long n = Soff; n <= rows_hi - 2; ++n) {
            elem v = rg.mul(c4, get(x3, x3off, n));
            v = rg.add(v, rg.mul(b2, get(x2, x2off, n)));
            v = rg.add(v, rg.mul(rg.mul(c2, b4), get(xs, -2, n)));
            if (n == 0) v = rg.add(v, b6);
            S[(size_t)(n - Soff)] = v;
        }
        std::vector<elem> f2S = detail::polymul_cap(rg, f2, f2off, S, Soff, rows_hi, sfoff);
        // C = f^2 (12 x^2 + 2 b2 x + 2 b4), needed for exponents <= B-3
        std::vector<elem> Cq;
        long Cqoff = -4;
        Cq.assign((size_t)(std::max(0L, (B - 1) - Cqoff + 1)), rg.zero());
        for (long n = Cqoff; n <= B - 1 - 2; ++n) {
            elem v = rg.mul(c12, get(x2, x2off, n));
            v = rg.add(v, rg.mul(rg.mul(c2, b2), get(xs, -2, n)));
            if (n == 0) v = rg.add(v, rg.mul(c2, b4));
            Cq[(size_t)(n - Cqoff)] = v;
        }
        long Coff;
        std::vector<elem> C = detail::polymul_cap(rg, f2, f2off, Cq, Cqoff, B - 1, Coff);

        // solve the triangular block for delta_{top+1} .. delta_{top+B}
        std::vector<elem> delta((size_t)B, rg.zero());
        for (long m = top - 1; m <= rows_hi; ++m) {
            elem acc = rg.sub(get(t1, t1off, m), get(f2S, sfoff, m));
            long inew = m + 2;
            for (long i = top + 1; i < inew; ++i) {
                elem d = delta[(size_t)(i - top - 1)];
                if (rg.is_zero(d)) continue;
                elem wterm = rg.mul(get(W, -2, m - i), rg.mul(rg.from_si(i), d));
                elem cterm = rg.mul(get(C, Coff, m - i), d);
                acc = rg.add(acc, rg.sub(wterm, cterm));
            }
            // acc - 4(inew+3) delta = 0
            delta[(size_t)(inew - top - 1)] = rg.div(acc, rg.from_si(4 * (inew + 3)));
        }
        for (auto& d : delta) xs.push_back(d);
        top += B;
    }

    TaniyamaSeries<R> T;
    T.xq.ring = rg;
    T.xq.val = -2;
    T.xq.prec = M;
    T.xq.a.assign(xs.begin(), xs.begin() + (size_t)(M + 3));
    T.xq.normalize();

    // y = ((q x')/f - a1 x - a3)/2
    LaurentSeries<R> xfull;
    xfull.ring = rg;
    xfull.val = -2;
    xfull.prec = cap;
    xfull.a = xs;
    LaurentSeries<R> fs(rg, 1, cap + 6);
    for (long n = 1; n <= cap + 6; ++n) fs.a[(size_t)(n - 1)] = rg.from_si((long)fM.at(n));
    fs.normalize();
    LaurentSeries<R> yq = series_mul(series_qdq(xfull), series_inv(fs));
    yq = series_sub(yq, series_scale(xfull, rg.from_mpz(E.a1)));
    LaurentSeries<R> a3s = LaurentSeries<R>::monomial(rg, rg.from_mpz(E.a3), 0, yq.prec);
    yq = series_sub(yq, a3s);
    yq = series_scale(yq, rg.inv(rg.from_si(2)));
    yq.truncate(M);
    T.yq = yq;
    return T;
}

inline TaniyamaSeries<QQ> taniyama_series(const EllipticCurve& E, long M) {
    NewformSeries f = an_sequence(E, M + 8);
    return taniyama_series_ring(QQ{}, E, f, M);
}

// curve-equation residual y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6),
// nonzero coefficients indicate an inconsistent pair
template <class R>
LaurentSeries<R> curve_equation_residual(R rg, const EllipticCurve& E,
                                         const LaurentSeries<R>& x, const LaurentSeries<R>& y) {
    LaurentSeries<R> lhs = series_mul(y, y);
    lhs = series_add(lhs, series_scale(series_mul(x, y), rg.from_mpz(E.a1)));
    lhs = series_add(lhs, series_scale(y, rg.from_mpz(E.a3)));
    LaurentSeries<R> rhs = series_mul(series_mul(x, x), x);
    rhs = series_add(rhs, series_scale(series_mul(x, x), rg.from_mpz(E.a2)));
    rhs = series_add(rhs, series_scale(x, rg.from_mpz(E.a4)));
    rhs = series_add(rhs, LaurentSeries<R>::monomial(rg, rg.from_mpz(E.a6), 0, rhs.prec));
    return series_sub(lhs, rhs);
}

} // namespace modparam

#endif
