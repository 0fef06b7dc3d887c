#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include <gmpxx.h>

#include "fsgc/errors.hpp"

namespace fsgc {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((unsigned __int128)a * b % m);
}

inline u64 pow_mod(u64 a, u64 e, u64 m) {
    u64 r = m == 1 ? 0 : 1;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Extended Euclid; returns inverse of a mod m, or throws if gcd(a, m) != 1.
inline u64 inv_mod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = (i64)m, nr = (i64)(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        t -= q * nt; std::swap(t, nt);
        r -= q * nr; std::swap(r, nr);
    }
    check_input(r == 1, "element not invertible in Z/m");
    if (t < 0) t += (i64)m;
    return (u64)t;
}

inline u64 euler_phi(u64 n) {
    u64 result = n;
    for (u64 q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            while (n % q == 0) n /= q;
            result -= result / q;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<u64> divisors_of(u64 n) {
    std::vector<u64> d;
    for (u64 q = 1; q * q <= n; ++q) {
        if (n % q == 0) {
            d.push_back(q);
            if (q != n / q) d.push_back(n / q);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

// C(n, k) for mpz arguments with the usual convention: zero when k < 0
// or (for n >= 0) k > n. Negative upper arguments never arise here.
inline mpz_class binomial_mpz(const mpz_class& n, const mpz_class& k) {
    if (k < 0) return 0;
    if (n >= 0 && k > n) return 0;
    check_internal(n >= 0, "binomial with negative upper argument");
    mpz_class r;
    check_input(k.fits_ulong_p(), "binomial lower argument too large");
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k.get_ui());
    return r;
}

inline mpz_class factorial_mpz(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline mpz_class pow_mpz(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// mpz reduced into [0, m), as u64.
inline u64 reduce_to_u64(const mpz_class& v, u64 m) {
    mpz_class r = v % mpz_class(static_cast<unsigned long>(m));
    if (r < 0) r += static_cast<unsigned long>(m);
    return r.get_ui();
}

// Exact p-adic valuation of a nonzero mpz.
inline long valuation_mpz(mpz_class v, u64 p) {
    check_internal(v != 0, "valuation of zero");
    long w = 0;
    mpz_class q, r, pz = static_cast<unsigned long>(p);
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
        if (r != 0) return w;
        v = q;
        ++w;
    }
}

} // namespace fsgc
