#pragma once

// Exact arithmetic substrate: residues mod p^alpha, Laurent polynomials,
// the polynomial Y(z), canonical Y-fractions (elements of the coefficient
// ring Z/p^alpha [z, z^-1, Y^-1]), and truncated power series.

#include <map>
#include <optional>
#include <vector>

#include "fsgc/numeric.hpp"

namespace fsgc {

struct PrimePower {
    u64 p = 0;
    unsigned alpha = 0;
    u64 modulus = 0;

    PrimePower() = default;
    PrimePower(u64 p_, unsigned alpha_) : p(p_), alpha(alpha_) {
        check_input(is_prime_u64(p_), "p must be prime");
        check_input(alpha_ >= 1, "alpha must be >= 1");
        modulus = 1;
        for (unsigned i = 0; i < alpha_; ++i) {
            check_input(modulus <= (u64(1) << 62) / p_, "p^alpha exceeds 2^63");
            modulus *= p_;
        }
    }

    bool operator==(const PrimePower& o) const = default;
};

struct ModScalar {
    u64 v = 0;
    u64 mod = 0;   // mod == 0 marks an uninitialised zero; it adopts the other operand's ring

    ModScalar() = default;
    ModScalar(u64 value, u64 modulus) : v(value % modulus), mod(modulus) {}
    explicit ModScalar(int) : v(0), mod(0) {}   // Series<T> zero constructor

    static ModScalar from_int(i64 x, u64 m) {
        i64 r = x % (i64)m;
        if (r < 0) r += (i64)m;
        return ModScalar((u64)r, m);
    }
    static ModScalar from_mpz(const mpz_class& x, u64 m) { return ModScalar(reduce_to_u64(x, m), m); }

    bool is_zero() const { return v == 0; }

    friend u64 common_mod(const ModScalar& a, const ModScalar& b) {
        if (a.mod == 0) return b.mod;
        if (b.mod == 0) return a.mod;
        check_input(a.mod == b.mod, "mixed moduli");
        return a.mod;
    }
    friend ModScalar operator+(const ModScalar& a, const ModScalar& b) {
        u64 m = common_mod(a, b);
        if (m == 0) return ModScalar();
        return ModScalar(add_mod(a.v, b.v, m), m);
    }
    friend ModScalar operator-(const ModScalar& a, const ModScalar& b) {
        u64 m = common_mod(a, b);
        if (m == 0) return ModScalar();
        return ModScalar(sub_mod(a.v, b.v, m), m);
    }
    friend ModScalar operator*(const ModScalar& a, const ModScalar& b) {
        u64 m = common_mod(a, b);
        if (m == 0) return ModScalar();
        return ModScalar(mul_mod(a.v, b.v, m), m);
    }
    ModScalar operator-() const { return mod ? ModScalar(mod - v, mod) : *this; }
    ModScalar& operator+=(const ModScalar& b) { return *this = *this + b; }
    ModScalar& operator-=(const ModScalar& b) { return *this = *this - b; }
    ModScalar& operator*=(const ModScalar& b) { return *this = *this * b; }
    bool operator==(const ModScalar& o) const { return v == o.v && (v == 0 || mod == o.mod); }

    ModScalar inverse() const {
        check_input(mod != 0, "inverse of uninitialised scalar");
        return ModScalar(inv_mod(v, mod), mod);
    }
    bool is_unit(u64 p) const { return v % p != 0; }
};

// Laurent polynomial over Z/m in z; no zero coefficients are stored.
struct LaurentPoly {
    std::map<i64, u64> c;   // exponent -> value in [0, m)
    u64 mod = 0;

    LaurentPoly() = default;
    explicit LaurentPoly(u64 m) : mod(m) {}

    static LaurentPoly monomial(u64 m, i64 exp, u64 value) {
        LaurentPoly r(m);
        value %= m;
        if (value) r.c[exp] = value;
        return r;
    }
    static LaurentPoly constant(u64 m, u64 value) { return monomial(m, 0, value); }

    bool is_zero() const { return c.empty(); }
    u64 coeff(i64 e) const {
        auto it = c.find(e);
        return it == c.end() ? 0 : it->second;
    }
    void set_coeff(i64 e, u64 v) {
        v %= mod;
        if (v == 0) c.erase(e);
        else c[e] = v;
    }
    void add_coeff(i64 e, u64 v) { set_coeff(e, add_mod(coeff(e), v % mod, mod)); }

    i64 min_exp() const { check_internal(!c.empty(), "min_exp of zero"); return c.begin()->first; }
    i64 max_exp() const { check_internal(!c.empty(), "max_exp of zero"); return c.rbegin()->first; }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        check_input(a.mod == b.mod, "mixed moduli");
        LaurentPoly r = a;
        for (auto& [e, v] : b.c) r.add_coeff(e, v);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        check_input(a.mod == b.mod, "mixed moduli");
        LaurentPoly r = a;
        for (auto& [e, v] : b.c) r.add_coeff(e, a.mod - v);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        check_input(a.mod == b.mod, "mixed moduli");
        LaurentPoly r(a.mod);
        for (auto& [ea, va] : a.c)
            for (auto& [eb, vb] : b.c)
                r.add_coeff(ea + eb, mul_mod(va, vb, a.mod));
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r(mod);
        for (auto& [e, v] : c) r.c[e] = mod - v;
        return r;
    }
    LaurentPoly scaled(u64 s) const {
        LaurentPoly r(mod);
        s %= mod;
        for (auto& [e, v] : c) {
            u64 w = mul_mod(v, s, mod);
            if (w) r.c[e] = w;
        }
        return r;
    }
    LaurentPoly shifted(i64 k) const {   // multiply by z^k
        LaurentPoly r(mod);
        for (auto& [e, v] : c) r.c[e + k] = v;
        return r;
    }
    LaurentPoly derivative() const {
        LaurentPoly r(mod);
        for (auto& [e, v] : c) {
            u64 w = mul_mod(reduce_to_u64(mpz_class((long)e), mod), v, mod);
            if (e != 0 && w) r.add_coeff(e - 1, w);
        }
        return r;
    }
    bool operator==(const LaurentPoly& o) const { return mod == o.mod && c == o.c; }

    // True iff every coefficient is divisible by d (in Z, via the canonical lift).
    bool divisible_by(u64 d) const {
        for (auto& [e, v] : c)
            if (v % d != 0) return false;
        return true;
    }
    // Coefficientwise exact division of the canonical lifts; result lives mod m/d.
    LaurentPoly div_scalar_exact(u64 d) const {
        check_internal(mod % d == 0 && divisible_by(d), "inexact scalar division");
        LaurentPoly r(mod / d);
        for (auto& [e, v] : c) r.set_coeff(e, v / d);
        return r;
    }
    LaurentPoly reduced(u64 new_mod) const {
        check_internal(mod % new_mod == 0, "not a reduction tower");
        LaurentPoly r(new_mod);
        for (auto& [e, v] : c) r.set_coeff(e, v % new_mod);
        return r;
    }
    // Reinterpret mod m' >= m without changing canonical lifts.
    LaurentPoly lifted(u64 new_mod) const {
        LaurentPoly r(new_mod);
        for (auto& [e, v] : c) r.set_coeff(e, v);
        return r;
    }
};

// Y(z) = z^{p-1} - (N+1)^{-1} when p >= 3 and mu != 0,1 (mod p); Y = 1 otherwise.
struct YPoly {
    PrimePower pp;
    u64 N = 0;
    bool trivial = true;
    u64 cinv = 0;   // (N+1)^{-1} mod p^alpha in the nontrivial case

    YPoly() = default;
    YPoly(const PrimePower& pp_, u64 N_) : pp(pp_), N(N_) {
        u64 mu = (pp.p - 1) * N;
        u64 mu_mod_p = mu % pp.p;
        if (pp.p >= 3 && mu_mod_p != 0 && mu_mod_p != 1) {
            trivial = false;
            cinv = inv_mod((N + 1) % pp.modulus, pp.modulus);
        }
    }

    LaurentPoly body() const {
        if (trivial) return LaurentPoly::constant(pp.modulus, 1);
        LaurentPoly b = LaurentPoly::monomial(pp.modulus, (i64)pp.p - 1, 1);
        b.add_coeff(0, pp.modulus - cinv);
        return b;
    }
    YPoly reduced_mod_p() const {
        YPoly y;
        y.pp = PrimePower(pp.p, 1);
        y.N = N;
        y.trivial = trivial;
        y.cinv = cinv % pp.p;
        return y;
    }
};

// Division with remainder by a polynomial with unit leading coefficient,
// well defined over Z/p^alpha. Returns quotient iff the remainder is zero.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den);

// num / Y^e in canonical form: minimal e, and e = 0 when Y is trivial.
struct YFraction {
    LaurentPoly num;
    unsigned e = 0;

    YFraction() = default;
    bool is_zero() const { return num.is_zero(); }
    bool operator==(const YFraction& o) const { return e == o.e && num == o.num; }
};

YFraction yfrac_canonicalize(LaurentPoly num, unsigned e, const YPoly& Y);
YFraction yfrac_add(const YFraction& a, const YFraction& b, const YPoly& Y);
YFraction yfrac_sub(const YFraction& a, const YFraction& b, const YPoly& Y);
YFraction yfrac_mul(const YFraction& a, const YFraction& b, const YPoly& Y);
YFraction yfrac_neg(const YFraction& a);
YFraction yfrac_derivative(const YFraction& a, const YPoly& Y);

// Truncated power series; index n holds the coefficient of z^n, n < T.
template <class S>
struct Series {
    std::vector<S> c;

    Series() = default;
    explicit Series(size_t T) : c(T, S(0)) {}

    size_t order() const { return c.size(); }
    const S& at(size_t n) const { return c[n]; }

    friend Series operator+(const Series& a, const Series& b) {
        check_input(a.order() == b.order(), "mismatched truncation");
        Series r(a.order());
        for (size_t i = 0; i < a.order(); ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) {
        check_input(a.order() == b.order(), "mismatched truncation");
        Series r(a.order());
        for (size_t i = 0; i < a.order(); ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        check_input(a.order() == b.order(), "mismatched truncation");
        Series r(a.order());
        for (size_t i = 0; i < a.order(); ++i) {
            if (a.c[i] == S(0)) continue;
            for (size_t j = 0; i + j < b.order(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        }
        return r;
    }
    Series derivative() const {
        Series r(order());
        for (size_t n = 1; n < order(); ++n) r.c[n - 1] = c[n] * S((int)n);
        return r;
    }
    Series scaled(const S& s) const {
        Series r(order());
        for (size_t i = 0; i < order(); ++i) r.c[i] = c[i] * s;
        return r;
    }
    bool operator==(const Series& o) const { return c == o.c; }
};

template <>
inline Series<ModScalar> Series<ModScalar>::derivative() const {
    Series r(order());
    for (size_t n = 1; n < order(); ++n) {
        u64 m = c[n].mod;
        if (m == 0) continue;
        r.c[n - 1] = c[n] * ModScalar(n % m, m);
    }
    return r;
}

using ModSeries = Series<ModScalar>;

// Series of Y^{-e}: the coefficient of z^{(p-1)k} is
// (-1)^e (N+1)^{e+k} C(e+k-1, k) mod p^alpha, everything else zero.
ModSeries expand_y_inverse(unsigned e, const YPoly& Y, size_t T);

// Expansion of a Y-fraction. Coefficients of z^n for 0 <= n < T go into the
// series; the finitely many negative-exponent coefficients are returned apart.
struct FractionExpansion {
    ModSeries nonneg;
    std::map<i64, u64> negative;
};
FractionExpansion expand_fraction(const YFraction& f, const YPoly& Y, size_t T);

} // namespace fsgc
