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

#ifndef MODPARAM_ARITH_HPP
#define MODPARAM_ARITH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace modparam {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

// Errors surfaced to the CLI with dedicated exit codes.
struct bad_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct precision_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct retry_with_larger_bounds : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline u64 invmod(u64 a, u64 p) {
    // extended Euclid; p prime, a != 0 mod p
    i64 t = 0, nt = 1;
    i64 r = (i64)p, nr = (i64)(a % p);
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::runtime_error("invmod: not invertible");
    return (u64)(t < 0 ? t + (i64)p : t);
}

inline bool miller_rabin_once(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic witness set for 64-bit inputs
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (!miller_rabin_once(n, a, d, s)) return false;
    }
    return true;
}

// Deterministic stream of ~58-bit primes. Products of two residues fit in
// 116 bits, so a 128-bit accumulator absorbs 4096 terms between reductions.
class PrimeStream {
  public:
    explicit PrimeStream(u64 start = (1ULL << 58) + 1) : next_(start | 1) {}
    u64 next() {
        while (!is_prime_u64(next_)) next_ += 2;
        u64 p = next_;
        next_ += 2;
        return p;
    }
  private:
    u64 next_;
};

// Shoup multiplication: f fixed, b varies; fprep = floor(f * 2^64 / p).
inline u64 shoup_prep(u64 f, u64 p) { return (u64)(((u128)f << 64) / p); }
inline u64 shoup_mulmod(u64 f, u64 b, u64 fprep, u64 p) {
    u64 q = (u64)(((u128)fprep * b) >> 64);
    u64 r = f * b - q * p;
    if (r >= p) r -= p;
    return r;
}

inline u64 mpz_mod_u64(const mpz_class& z, u64 p) {
    // p < 2^59 fits an unsigned long on LP64
    unsigned long r = mpz_fdiv_ui(z.get_mpz_t(), (unsigned long)p);
    return (u64)r;
}

inline u64 fnv1a64(const std::string& s) {
    u64 h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline i64 gcd_i64(i64 a, i64 b) {
    while (b) { i64 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}

} // namespace modparam

#endif
