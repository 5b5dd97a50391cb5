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

#ifndef MODPARAM_CPLX_HPP
#define MODPARAM_CPLX_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "arith.hpp"

namespace modparam {

// Arbitrary-precision real; precision travels with the value, binary
// operations widen to the larger operand precision.
class Real {
  public:
    mpfr_t v;

    explicit Real(long prec = 64) { mpfr_init2(v, (mpfr_prec_t)prec); mpfr_set_zero(v, 1); }
    Real(const Real& o) { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v, 2); mpfr_swap(v, o.v); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v, o.v); return *this; }
    ~Real() { mpfr_clear(v); }

    long prec() const { return (long)mpfr_get_prec(v); }

    static Real of_si(long x, long prec) { Real r(prec); mpfr_set_si(r.v, x, MPFR_RNDN); return r; }
    static Real of_double(double x, long prec) { Real r(prec); mpfr_set_d(r.v, x, MPFR_RNDN); return r; }
    static Real of_mpz(const mpz_class& x, long prec) { Real r(prec); mpfr_set_z(r.v, x.get_mpz_t(), MPFR_RNDN); return r; }
    static Real of_mpq(const mpq_class& x, long prec) { Real r(prec); mpfr_set_q(r.v, x.get_mpq_t(), MPFR_RNDN); return r; }
    static Real of_str(const std::string& s, long prec) {
        Real r(prec);
        if (mpfr_set_str(r.v, s.c_str(), 10, MPFR_RNDN) != 0) throw bad_input("Real: bad decimal string " + s);
        return r;
    }
    static Real pow2(long e, long prec) { // 2^e
        Real r(prec);
        mpfr_set_ui_2exp(r.v, 1, (mpfr_exp_t)e, MPFR_RNDN);
        return r;
    }
    static Real pi(long prec) { Real r(prec); mpfr_const_pi(r.v, MPFR_RNDN); return r; }

    double to_double() const { return mpfr_get_d(v, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v) != 0; }
    int sign() const { return mpfr_sgn(v); }
    bool is_finite() const { return mpfr_number_p(v) != 0; }

    mpz_class round_to_mpz() const {
        mpfr_t t;
        mpfr_init2(t, mpfr_get_prec(v));
        mpfr_round(t, v);
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
        mpfr_clear(t);
        return z;
    }
    mpz_class floor_to_mpz() const {
        mpfr_t t;
        mpfr_init2(t, mpfr_get_prec(v));
        mpfr_floor(t, v);
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
        mpfr_clear(t);
        return z;
    }

    std::string str(long digits = 20) const {
        char* s = nullptr;
        mpfr_exp_t e;
        s = mpfr_get_str(nullptr, &e, 10, (size_t)digits, v, MPFR_RNDN);
        std::string out = s ? s : "nan";
        mpfr_free_str(s);
        bool neg = !out.empty() && out[0] == '-';
        std::string digits_part = neg ? out.substr(1) : out;
        std::string res = (neg ? "-" : "") + ("0." + digits_part) + "e" + std::to_string((long)e);
        return res;
    }
};

inline long common_prec(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }

inline Real at_prec(const Real& a, long prec) {
    Real r(prec);
    mpfr_set(r.v, a.v, MPFR_RNDN);
    return r;
}

#define MODPARAM_REAL_BINOP(op, fn)                                  \
    inline Real operator op(const Real& a, const Real& b) {         \
        Real r(common_prec(a, b));                                  \
        fn(r.v, a.v, b.v, MPFR_RNDN);                               \
        return r;                                                   \
    }
MODPARAM_REAL_BINOP(+, mpfr_add)
MODPARAM_REAL_BINOP(-, mpfr_sub)
MODPARAM_REAL_BINOP(*, mpfr_mul)
MODPARAM_REAL_BINOP(/, mpfr_div)
#undef MODPARAM_REAL_BINOP

inline Real operator-(const Real& a) { Real r(a.prec()); mpfr_neg(r.v, a.v, MPFR_RNDN); return r; }
inline bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v, b.v) < 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v, b.v) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v, b.v) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v, b.v) >= 0; }

inline Real rabs(const Real& a) { Real r(a.prec()); mpfr_abs(r.v, a.v, MPFR_RNDN); return r; }
inline Real rsqrt(const Real& a) { Real r(a.prec()); mpfr_sqrt(r.v, a.v, MPFR_RNDN); return r; }
inline Real rexp(const Real& a) { Real r(a.prec()); mpfr_exp(r.v, a.v, MPFR_RNDN); return r; }
inline Real rlog(const Real& a) { Real r(a.prec()); mpfr_log(r.v, a.v, MPFR_RNDN); return r; }
inline Real rmul_si(const Real& a, long s) { Real r(a.prec()); mpfr_mul_si(r.v, a.v, s, MPFR_RNDN); return r; }
inline Real rdiv_si(const Real& a, long s) { Real r(a.prec()); mpfr_div_si(r.v, a.v, s, MPFR_RNDN); return r; }
inline Real rmul_2exp(const Real& a, long e) { Real r(a.prec()); mpfr_mul_2si(r.v, a.v, e, MPFR_RNDN); return r; }
inline void rsincos(Real& s, Real& c, const Real& a) {
    mpfr_sin_cos(s.v, c.v, a.v, MPFR_RNDN);
}
inline Real rhypot(const Real& a, const Real& b) {
    Real r(common_prec(a, b));
    mpfr_hypot(r.v, a.v, b.v, MPFR_RNDN);
    return r;
}

// Complex number on top of Real.
struct Cplx {
    Real re, im;

    explicit Cplx(long prec = 64) : re(prec), im(prec) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    static Cplx of_si(long r, long i, long prec) { return Cplx(Real::of_si(r, prec), Real::of_si(i, prec)); }
    static Cplx of_real(const Real& r) { return Cplx(r, Real::of_si(0, r.prec())); }

    long prec() const { return std::max(re.prec(), im.prec()); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }
    std::string str(long digits = 20) const { return re.str(digits) + " + " + im.str(digits) + "*I"; }
};

inline Cplx at_prec(const Cplx& a, long prec) { return Cplx(at_prec(a.re, prec), at_prec(a.im, prec)); }

inline Cplx operator+(const Cplx& a, const Cplx& b) { return Cplx(a.re + b.re, a.im + b.im); }
inline Cplx operator-(const Cplx& a, const Cplx& b) { return Cplx(a.re - b.re, a.im - b.im); }
inline Cplx operator-(const Cplx& a) { return Cplx(-a.re, -a.im); }
inline Cplx operator*(const Cplx& a, const Cplx& b) {
    return Cplx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline Cplx operator*(const Cplx& a, const Real& s) { return Cplx(a.re * s, a.im * s); }
inline Cplx conj(const Cplx& a) { return Cplx(a.re, -a.im); }
inline Real cnorm(const Cplx& a) { return a.re * a.re + a.im * a.im; }
inline Real cabs(const Cplx& a) { return rhypot(a.re, a.im); }
inline Cplx operator/(const Cplx& a, const Cplx& b) {
    Real n = cnorm(b);
    Cplx t = a * conj(b);
    return Cplx(t.re / n, t.im / n);
}
inline Cplx operator/(const Cplx& a, const Real& s) { return Cplx(a.re / s, a.im / s); }

// principal square root
inline Cplx csqrt(const Cplx& z) {
    long prec = z.prec();
    if (z.im.is_zero()) {
        if (z.re.sign() >= 0) return Cplx(rsqrt(z.re), Real::of_si(0, prec));
        return Cplx(Real::of_si(0, prec), rsqrt(-z.re));
    }
    Real r = cabs(z);
    Real u = rsqrt(rmul_2exp(r + z.re, -1)); // sqrt((|z|+re)/2)
    if (u.is_zero()) {
        Real w = rsqrt(rmul_2exp(r - z.re, -1));
        return z.im.sign() >= 0 ? Cplx(u, w) : Cplx(u, -w);
    }
    Real w = z.im / rmul_2exp(u, 1);
    return Cplx(u, w);
}

inline Cplx cexp(const Cplx& z) {
    long prec = z.prec();
    Real m = rexp(z.re);
    Real s(prec), c(prec);
    rsincos(s, c, z.im);
    return Cplx(m * c, m * s);
}

// e^{2 pi i tau}
inline Cplx q_of_tau(const Cplx& tau, long prec) {
    Real twopi = rmul_2exp(Real::pi(prec), 1);
    return cexp(Cplx(-(twopi * tau.im), twopi * tau.re));
}

inline Cplx cpow_ui(const Cplx& z, unsigned long e) {
    Cplx r = Cplx::of_si(1, 0, z.prec());
    Cplx b = z;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

// ---- balls for certification -------------------------------------------------

// rigorous upper-bound arithmetic for radii: low-precision mpfr with
// upward rounding
inline Real ubound_add(const Real& a, const Real& b) {
    Real r(64);
    mpfr_add(r.v, a.v, b.v, MPFR_RNDU);
    return r;
}
inline Real ubound_mul(const Real& a, const Real& b) {
    Real r(64);
    mpfr_mul(r.v, a.v, b.v, MPFR_RNDU);
    return r;
}
inline Real ubound_abs(const Cplx& z) { // upper bound of |z|
    Real r(64);
    mpfr_hypot(r.v, z.re.v, z.im.v, MPFR_RNDU);
    Real eps = rmul_2exp(r, -50);
    mpfr_add(r.v, r.v, eps.v, MPFR_RNDU);
    return r;
}
// half-ulp style rounding slop for a freshly computed complex midpoint
inline Real ulp_slop(const Cplx& z, int ops = 4) {
    Real m = ubound_abs(z);
    Real r = rmul_2exp(m, -(long)z.prec() + 3 + ops);
    return r;
}

struct CBall {
    Cplx mid;
    Real rad; // nonnegative upper bound

    explicit CBall(long prec = 64) : mid(prec), rad(Real::of_si(0, 64)) {}
    CBall(Cplx m, Real r) : mid(std::move(m)), rad(std::move(r)) {}
    static CBall exact(const Cplx& m) { return CBall(m, Real::of_si(0, 64)); }

    bool contains_zero() const {
        Real lo(64);
        mpfr_hypot(lo.v, mid.re.v, mid.im.v, MPFR_RNDD);
        return !(lo > rad);
    }
};

inline CBall operator+(const CBall& a, const CBall& b) {
    Cplx m = a.mid + b.mid;
    Real r = ubound_add(ubound_add(a.rad, b.rad), ulp_slop(m));
    return CBall(m, r);
}
inline CBall operator*(const CBall& a, const CBall& b) {
    Cplx m = a.mid * b.mid;
    Real r = ubound_add(ubound_mul(ubound_abs(a.mid), b.rad),
                        ubound_mul(ubound_abs(b.mid), a.rad));
    r = ubound_add(r, ubound_mul(a.rad, b.rad));
    r = ubound_add(r, ulp_slop(m));
    return CBall(m, r);
}

} // namespace modparam

#endif
