#include "fsgc/ring.hpp"

namespace fsgc {

std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
    check_input(num.mod == den.mod, "mixed moduli");
    check_internal(!den.is_zero(), "division by zero polynomial");
    if (num.is_zero()) return LaurentPoly(num.mod);

    // Shift both to honest polynomials; the leading coefficient of den must be a unit.
    i64 nshift = num.min_exp(), dshift = den.min_exp();
    LaurentPoly r = num.shifted(-nshift);
    LaurentPoly d = den.shifted(-dshift);
    u64 lead_inv = inv_mod(d.coeff(d.max_exp()), d.mod);
    i64 ddeg = d.max_exp();

    LaurentPoly q(num.mod);
    while (!r.is_zero() && r.max_exp() >= ddeg) {
        i64 e = r.max_exp() - ddeg;
        u64 f = mul_mod(r.coeff(r.max_exp()), lead_inv, r.mod);
        q.add_coeff(e, f);
        r = r - d.shifted(e).scaled(f);
    }
    if (!r.is_zero()) return std::nullopt;
    return q.shifted(nshift - dshift);
}

YFraction yfrac_canonicalize(LaurentPoly num, unsigned e, const YPoly& Y) {
    if (Y.trivial) {
        check_internal(e == 0, "nonzero Y-exponent with trivial Y");
        return YFraction{std::move(num), 0};
    }
    if (num.is_zero()) return YFraction{LaurentPoly(num.mod), 0};
    LaurentPoly body = Y.body();
    if (num.mod != Y.pp.modulus) body = body.reduced(num.mod);
    while (e > 0) {
        auto q = divide_exact(num, body);
        if (!q) break;
        num = std::move(*q);
        --e;
    }
    return YFraction{std::move(num), e};
}

YFraction yfrac_add(const YFraction& a, const YFraction& b, const YPoly& Y) {
    u64 m = a.num.mod ? a.num.mod : b.num.mod;
    check_internal(m != 0, "fraction without ring");
    LaurentPoly body = Y.body();
    if (body.mod != m) body = body.reduced(m);
    unsigned e = std::max(a.e, b.e);
    LaurentPoly an = a.num.mod ? a.num : LaurentPoly(m);
    LaurentPoly bn = b.num.mod ? b.num : LaurentPoly(m);
    for (unsigned i = a.e; i < e; ++i) an = an * body;
    for (unsigned i = b.e; i < e; ++i) bn = bn * body;
    return yfrac_canonicalize(an + bn, e, Y);
}

YFraction yfrac_sub(const YFraction& a, const YFraction& b, const YPoly& Y) {
    return yfrac_add(a, yfrac_neg(b), Y);
}

YFraction yfrac_mul(const YFraction& a, const YFraction& b, const YPoly& Y) {
    return yfrac_canonicalize(a.num * b.num, a.e + b.e, Y);
}

YFraction yfrac_neg(const YFraction& a) { return YFraction{-a.num, a.e}; }

YFraction yfrac_derivative(const YFraction& a, const YPoly& Y) {
    // (A / Y^e)' = A'/Y^e - e A Y' / Y^{e+1}
    YFraction first{a.num.derivative(), a.e};
    if (a.e == 0 || Y.trivial) return yfrac_canonicalize(first.num, first.e, Y);
    u64 m = a.num.mod;
    LaurentPoly yprime = LaurentPoly::monomial(m, (i64)Y.pp.p - 2, (Y.pp.p - 1) % m);
    LaurentPoly top = a.num * yprime;
    top = top.scaled(a.e % m);
    YFraction second{-top, a.e + 1};
    return yfrac_add(yfrac_canonicalize(first.num, first.e, Y),
                     yfrac_canonicalize(second.num, second.e, Y), Y);
}

ModSeries expand_y_inverse(unsigned e, const YPoly& Y, size_t T) {
    u64 m = Y.pp.modulus;
    ModSeries s(T);
    for (size_t i = 0; i < T; ++i) s.c[i] = ModScalar(0, m);
    if (e == 0) {
        if (T > 0) s.c[0] = ModScalar(1, m);
        return s;
    }
    check_input(!Y.trivial, "Y is trivial; only exponent 0 is expandable");
    u64 Mp1 = (Y.N + 1) % m;
    u64 sign = (e % 2 == 0) ? 1 : m - 1;
    mpz_class binom = 1;   // C(e+k-1, k), updated exactly
    u64 mpow = pow_mod(Mp1, e, m);
    size_t step = Y.pp.p - 1;
    for (size_t k = 0, n = 0; n < T; ++k, n += step) {
        u64 v = mul_mod(mul_mod(sign, mpow, m), reduce_to_u64(binom, m), m);
        s.c[n] = ModScalar(v, m);
        binom *= (unsigned long)(e + k);
        binom /= (unsigned long)(k + 1);
        mpow = mul_mod(mpow, Mp1, m);
    }
    return s;
}

FractionExpansion expand_fraction(const YFraction& f, const YPoly& Y, size_t T) {
    u64 m = Y.pp.modulus;
    if (!f.num.is_zero()) m = f.num.mod;
    FractionExpansion out;
    out.nonneg = ModSeries(T);
    for (size_t i = 0; i < T; ++i) out.nonneg.c[i] = ModScalar(0, m);
    if (f.num.is_zero()) return out;

    YPoly Yl = Y;
    if (m != Y.pp.modulus) Yl = Y.reduced_mod_p();   // only used for mod-p fractions
    check_internal(Yl.pp.modulus == m, "fraction modulus differs from ring");

    i64 lo = f.num.min_exp();
    size_t inner_T = T + (size_t)std::max<i64>(0, -lo) + 1;
    ModSeries inv = expand_y_inverse(f.e, Yl, inner_T);
    for (auto& [ej, v] : f.num.c) {
        for (size_t k = 0; k < inner_T; ++k) {
            if (inv.c[k].v == 0) continue;
            i64 n = ej + (i64)k;
            u64 add = mul_mod(v, inv.c[k].v, m);
            if (n < 0) {
                u64& slot = out.negative[n];
                slot = add_mod(slot, add, m);
                if (slot == 0) out.negative.erase(n);
            } else if ((size_t)n < T) {
                out.nonneg.c[n] = out.nonneg.c[n] + ModScalar(add, m);
            }
        }
    }
    return out;
}

} // namespace fsgc
