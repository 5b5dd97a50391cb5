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

#ifndef MODPARAM_SERIES_HPP
#define MODPARAM_SERIES_HPP

#include <algorithm>
#include <cassert>

#include "rings.hpp"

namespace modparam {

// Truncated Laurent series in q: coefficients for exponents val..prec,
// i.e. the series is known modulo q^{prec+1}.  Arithmetic never reports
// more precision than the inputs justify.
template <class R>
struct LaurentSeries {
    using elem = typename R::elem;

    R ring;
    long val = 1;   // lowest stored exponent
    long prec = 0;  // highest known exponent (val > prec encodes 0 to prec)
    std::vector<elem> a; // a[i] = coefficient of q^{val+i}

    LaurentSeries() = default;
    LaurentSeries(R rg, long v, long pr) : ring(rg), val(v), prec(pr) {
        if (v <= pr) a.assign((size_t)(pr - v + 1), rg.zero());
    }

    static LaurentSeries zero(R rg, long pr) {
        LaurentSeries s;
        s.ring = rg;
        s.val = pr + 1;
        s.prec = pr;
        return s;
    }
    static LaurentSeries monomial(R rg, const elem& c, long n, long pr) {
        LaurentSeries s(rg, n, pr);
        if (n <= pr) s.a[0] = c;
        s.normalize();
        return s;
    }
    static LaurentSeries one(R rg, long pr) { return monomial(rg, rg.one(), 0, pr); }

    bool is_zero() const { return a.empty(); }

    elem coeff(long n) const {
        if (n < val || n > prec || a.empty()) return ring.zero();
        return a[(size_t)(n - val)];
    }

    void set_coeff(long n, const elem& c) {
        assert(n >= val && n <= prec && !a.empty());
        a[(size_t)(n - val)] = c;
    }

    // strip leading zeros so the invariant "leading coefficient nonzero
    // unless identically zero to precision" holds
    void normalize() {
        size_t i = 0;
        while (i < a.size() && ring.is_zero(a[i])) ++i;
        if (i == a.size()) {
            a.clear();
            val = prec + 1;
        } else if (i > 0) {
            a.erase(a.begin(), a.begin() + (long)i);
            val += (long)i;
        }
    }

    // cap the precision; never extends what is justified
    void truncate(long new_prec) {
        if (new_prec >= prec) return;
        prec = new_prec;
        if (val > prec) { a.clear(); val = prec + 1; return; }
        a.resize((size_t)(prec - val + 1));
        normalize();
    }
};

template <class R>
LaurentSeries<R> series_add(const LaurentSeries<R>& x, const LaurentSeries<R>& y) {
    const R& rg = x.ring;
    long pr = std::min(x.prec, y.prec);
    long v = std::min(x.val, y.val);
    if (v > pr) return LaurentSeries<R>::zero(rg, pr);
    LaurentSeries<R> r(rg, v, pr);
    for (long n = v; n <= pr; ++n) r.a[(size_t)(n - v)] = rg.add(x.coeff(n), y.coeff(n));
    r.normalize();
    return r;
}

template <class R>
LaurentSeries<R> series_sub(const LaurentSeries<R>& x, const LaurentSeries<R>& y) {
    const R& rg = x.ring;
    long pr = std::min(x.prec, y.prec);
    long v = std::min(x.val, y.val);
    if (v > pr) return LaurentSeries<R>::zero(rg, pr);
    LaurentSeries<R> r(rg, v, pr);
    for (long n = v; n <= pr; ++n) r.a[(size_t)(n - v)] = rg.sub(x.coeff(n), y.coeff(n));
    r.normalize();
    return r;
}

template <class R>
LaurentSeries<R> series_neg(const LaurentSeries<R>& x) {
    LaurentSeries<R> r = x;
    for (auto& c : r.a) c = x.ring.neg(c);
    return r;
}

template <class R>
LaurentSeries<R> series_scale(const LaurentSeries<R>& x, const typename R::elem& c) {
    LaurentSeries<R> r = x;
    for (auto& e : r.a) e = x.ring.mul(e, c);
    r.normalize();
    return r;
}

namespace detail {

// generic convolution window [lo..hi] relative to (x.val + y.val)
template <class R>
void conv_window(const LaurentSeries<R>& x, const LaurentSeries<R>& y,
                 std::vector<typename R::elem>& out, long lo, long hi) {
    const R& rg = x.ring;
    out.assign((size_t)(hi - lo + 1), rg.zero());
    long nx = (long)x.a.size(), ny = (long)y.a.size();
    for (long i = 0; i < nx; ++i) {
        if (rg.is_zero(x.a[(size_t)i])) continue;
        long jlo = std::max(0L, lo - i), jhi = std::min(ny - 1, hi - i);
        for (long j = jlo; j <= jhi; ++j)
            rg.addmul_inplace(out[(size_t)(i + j - lo)], x.a[(size_t)i], y.a[(size_t)j]);
    }
}

// Fp specialization: 128-bit lazy accumulation, reduce every 4096 terms
inline void conv_window(const LaurentSeries<Fp>& x, const LaurentSeries<Fp>& y,
                        std::vector<u64>& out, long lo, long hi) {
    u64 p = x.ring.p;
    out.assign((size_t)(hi - lo + 1), 0);
    long nx = (long)x.a.size(), ny = (long)y.a.size();
    for (long k = lo; k <= hi; ++k) {
        long ilo = std::max(0L, k - (ny - 1)), ihi = std::min(nx - 1, k);
        u128 acc = 0;
        int lag = 0;
        for (long i = ilo; i <= ihi; ++i) {
            acc += (u128)x.a[(size_t)i] * y.a[(size_t)(k - i)];
            if (++lag == 4096) { acc %= p; lag = 0; }
        }
        out[(size_t)(k - lo)] = (u64)(acc % p);
    }
}

} // namespace detail

// val = val(x)+val(y); prec = min(prec(x)+val(y), prec(y)+val(x))
template <class R>
LaurentSeries<R> series_mul(const LaurentSeries<R>& x, const LaurentSeries<R>& y) {
    const R& rg = x.ring;
    long pr = std::min(x.prec + y.val, y.prec + x.val);
    if (x.is_zero() || y.is_zero()) return LaurentSeries<R>::zero(rg, pr);
    long v = x.val + y.val;
    if (v > pr) return LaurentSeries<R>::zero(rg, pr);
    LaurentSeries<R> r;
    r.ring = rg;
    r.val = v;
    r.prec = pr;
    detail::conv_window(x, y, r.a, 0, pr - v);
    r.normalize();
    return r;
}

template <class R>
LaurentSeries<R> series_pow(const LaurentSeries<R>& x, unsigned long e) {
    if (e == 0) return LaurentSeries<R>::one(x.ring, x.prec - x.val);
    LaurentSeries<R> r = x;
    for (unsigned long i = 1; i < e; ++i) r = series_mul(r, x);
    return r;
}

// inverse of a series with nonzero leading coefficient
template <class R>
LaurentSeries<R> series_inv(const LaurentSeries<R>& x) {
    const R& rg = x.ring;
    if (x.is_zero()) throw bad_input("series_inv: zero series");
    long n = x.prec - x.val; // number of known coefficients past the lead
    LaurentSeries<R> r;
    r.ring = rg;
    r.val = -x.val;
    r.prec = -x.val + n;
    r.a.assign((size_t)(n + 1), rg.zero());
    typename R::elem lead_inv = rg.inv(x.a[0]);
    r.a[0] = lead_inv;
    for (long k = 1; k <= n; ++k) {
        typename R::elem s = rg.zero();
        long jmax = std::min<long>(k, (long)x.a.size() - 1);
        for (long j = 1; j <= jmax; ++j)
            rg.addmul_inplace(s, x.a[(size_t)j], r.a[(size_t)(k - j)]);
        r.a[(size_t)k] = rg.neg(rg.mul(s, lead_inv));
    }
    r.normalize();
    return r;
}

template <class R>
LaurentSeries<R> series_div(const LaurentSeries<R>& x, const LaurentSeries<R>& y) {
    return series_mul(x, series_inv(y));
}

// substitute q -> q^N; a series known mod q^{M+1} yields one known mod q^{NM+N}
template <class R>
LaurentSeries<R> series_compose_qN(const LaurentSeries<R>& x, long N) {
    const R& rg = x.ring;
    long pr = x.prec * N + (N - 1);
    if (x.is_zero()) return LaurentSeries<R>::zero(rg, pr);
    LaurentSeries<R> r(rg, x.val * N, pr);
    for (size_t i = 0; i < x.a.size(); ++i)
        r.a[(size_t)((long)i * N)] = x.a[i];
    r.normalize();
    return r;
}

// q * d/dq
template <class R>
LaurentSeries<R> series_qdq(const LaurentSeries<R>& x) {
    const R& rg = x.ring;
    LaurentSeries<R> r = x;
    for (size_t i = 0; i < r.a.size(); ++i)
        r.a[i] = rg.mul(r.a[i], rg.from_si(r.val + (long)i));
    r.normalize();
    return r;
}

// term-wise a_n / n (formal Eichler integral of a series with val >= 1)
template <class R>
LaurentSeries<R> series_integrate_divn(const LaurentSeries<R>& x) {
    const R& rg = x.ring;
    if (!x.is_zero() && x.val < 1) throw bad_input("series_integrate_divn: valuation must be >= 1");
    LaurentSeries<R> r = x;
    for (size_t i = 0; i < r.a.size(); ++i)
        r.a[i] = rg.div(r.a[i], rg.from_si(r.val + (long)i));
    return r;
}

template <class R>
bool series_is_zero_to_prec(const LaurentSeries<R>& x) {
    for (auto& c : x.a)
        if (!x.ring.is_zero(c)) return false;
    return true;
}

} // namespace modparam

#endif
