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

#ifndef MODPARAM_RINGS_HPP
#define MODPARAM_RINGS_HPP

#include <vector>

#include "arith.hpp"

namespace modparam {

// Coefficient rings for q-expansion work.  All operations are value
// semantics; a ring object is a small copyable context.

struct QQ {
    using elem = mpq_class;
    static constexpr bool is_modular = false;

    elem zero() const { return elem(0); }
    elem one() const { return elem(1); }
    bool is_zero(const elem& a) const { return a == 0; }
    elem add(const elem& a, const elem& b) const { return a + b; }
    elem sub(const elem& a, const elem& b) const { return a - b; }
    elem mul(const elem& a, const elem& b) const { return a * b; }
    elem neg(const elem& a) const { return -a; }
    elem div(const elem& a, const elem& b) const { return a / b; }
    elem inv(const elem& a) const { return elem(1) / a; }
    elem from_si(long v) const { return elem(v); }
    elem from_mpz(const mpz_class& v) const { return elem(v); }
    elem from_mpq(const mpq_class& v) const { return v; }
    void addmul_inplace(elem& acc, const elem& a, const elem& b) const {
        mpq_class t = a * b;
        acc += t;
    }
};

struct Fp {
    using elem = u64;
    static constexpr bool is_modular = true;
    u64 p = 0;

    Fp() = default;
    explicit Fp(u64 prime) : p(prime) {}

    elem zero() const { return 0; }
    elem one() const { return 1 % p; }
    bool is_zero(const elem& a) const { return a == 0; }
    elem add(elem a, elem b) const { return addmod(a, b, p); }
    elem sub(elem a, elem b) const { return submod(a, b, p); }
    elem mul(elem a, elem b) const { return mulmod(a, b, p); }
    elem neg(elem a) const { return a ? p - a : 0; }
    elem inv(elem a) const { return invmod(a, p); }
    elem div(elem a, elem b) const { return mulmod(a, invmod(b, p), p); }
    elem from_si(long v) const {
        long r = v % (long)p;
        return r < 0 ? (u64)(r + (long)p) : (u64)r;
    }
    elem from_mpz(const mpz_class& v) const { return mpz_mod_u64(v, p); }
    elem from_mpq(const mpq_class& v) const {
        u64 n = mpz_mod_u64(v.get_num(), p);
        u64 d = mpz_mod_u64(v.get_den(), p);
        return mulmod(n, invmod(d, p), p);
    }
    void addmul_inplace(elem& acc, elem a, elem b) const {
        acc = addmod(acc, mulmod(a, b, p), p);
    }
};

} // namespace modparam

#endif
