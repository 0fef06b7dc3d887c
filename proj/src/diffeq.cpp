#include "fsgc/diffeq.hpp"

#include <sstream>

namespace fsgc {

void NonlinearODE::add_term(const DerivMonomial& mon, i64 zpow, const mpz_class& c) {
    if (c == 0) return;
    auto& coef = terms[mon];
    mpz_class& slot = coef[zpow];
    slot += c;
    if (modulus) {
        slot %= (unsigned long)modulus;
        if (slot < 0) slot += (unsigned long)modulus;
    }
    if (slot == 0) {
        coef.erase(zpow);
        if (coef.empty()) terms.erase(mon);
    }
}

size_t NonlinearODE::term_count() const {
    size_t n = 0;
    for (auto& [mon, coef] : terms) n += coef.size();
    return n;
}

unsigned NonlinearODE::max_derivative() const {
    unsigned d = 0;
    for (auto& [mon, coef] : terms)
        for (auto& [ord, exp] : mon) d = std::max(d, ord);
    return d;
}

unsigned NonlinearODE::max_f_degree() const {
    unsigned d = 0;
    for (auto& [mon, coef] : terms) {
        unsigned s = 0;
        for (auto& [ord, exp] : mon) s += exp;
        d = std::max(d, s);
    }
    return d;
}

namespace {

using CoefQ = std::map<i64, mpq_class>;
using DiffPolyQ = std::map<DerivMonomial, CoefQ>;

void dp_add(DiffPolyQ& a, const DerivMonomial& mon, i64 zpow, const mpq_class& c) {
    if (c == 0) return;
    auto& slot = a[mon][zpow];
    slot += c;
    if (slot == 0) {
        a[mon].erase(zpow);
        if (a[mon].empty()) a.erase(mon);
    }
}

// d/dz: acts on the z-power and, by Leibniz, bumps one derivative at a time.
DiffPolyQ dp_derivative(const DiffPolyQ& a) {
    DiffPolyQ r;
    for (auto& [mon, coef] : a) {
        for (auto& [zp, c] : coef) {
            if (zp != 0) dp_add(r, mon, zp - 1, c * zp);
            for (auto& [ord, exp] : mon) {
                DerivMonomial m2 = mon;
                if (--m2[ord] == 0) m2.erase(ord);
                ++m2[ord + 1];
                dp_add(r, m2, zp, c * exp);
            }
        }
    }
    return r;
}

// multiply by F/(m z)
DiffPolyQ dp_mul_F_over_mz(const DiffPolyQ& a, u64 m) {
    DiffPolyQ r;
    mpq_class inv_m(1, (unsigned long)m);
    for (auto& [mon, coef] : a) {
        DerivMonomial m2 = mon;
        ++m2[0];
        for (auto& [zp, c] : coef) dp_add(r, m2, zp - 1, c * inv_m);
    }
    return r;
}

} // namespace

NonlinearODE derive_f_equation(const ThetaCoeffs& theta) {
    size_t mu = theta.theta.size() - 1;
    check_input(mu >= 1, "equation derivation needs mu >= 1");
    u64 m = theta.m;

    // r_j = G^{(j)}/G as a polynomial in F, F', ... via r_{j+1} = r_j' + (F/(mz)) r_j
    DiffPolyQ acc;                      // sum theta_j z^j r_j, with the G' term (theta_1 z - m)
    DiffPolyQ r;                        // r_0 = 1
    dp_add(r, {}, 0, 1);
    for (size_t j = 0; j <= mu; ++j) {
        if (j > 0) {
            DiffPolyQ next = dp_derivative(r);
            DiffPolyQ fr = dp_mul_F_over_mz(r, m);
            for (auto& [mon, coef] : fr)
                for (auto& [zp, c] : coef) dp_add(next, mon, zp, c);
            r = std::move(next);
        }
        for (auto& [mon, coef] : r) {
            for (auto& [zp, c] : coef) {
                mpq_class th(theta.theta[j]);
                dp_add(acc, mon, zp + (i64)j, c * th);
                if (j == 1) dp_add(acc, mon, zp, c * mpq_class(-(long)m));
            }
        }
    }

    // clear denominators: multiply by z * m^mu, then take the primitive part
    mpz_class mpow = pow_mpz(mpz_class((unsigned long)m), (unsigned long)mu);
    NonlinearODE e;
    mpz_class content = 0;
    for (auto& [mon, coef] : acc) {
        for (auto& [zp, c] : coef) {
            mpq_class scaled = c * mpq_class(mpow);
            check_internal(scaled.get_den() == 1, "denominator did not clear");
            check_internal(zp + 1 >= 0, "unexpected z-pole in the derived equation");
            e.add_term(mon, zp + 1, scaled.get_num());
        }
    }
    for (auto& [mon, coef] : e.terms)
        for (auto& [zp, c] : coef) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    check_internal(content > 0, "derived equation is identically zero");
    // orient so that the pure F^mu term is positive
    DerivMonomial top{{0, (unsigned)mu}};
    mpz_class sign = 1;
    auto it = e.terms.find(top);
    if (it != e.terms.end() && it->second.begin()->second < 0) sign = -1;
    for (auto& [mon, coef] : e.terms)
        for (auto& [zp, c] : coef) c = sign * c / content;
    return e;
}

NonlinearODE reduce_equation(const NonlinearODE& e, const PrimePower& pp) {
    NonlinearODE r;
    r.modulus = pp.modulus;
    for (auto& [mon, coef] : e.terms)
        for (auto& [zp, c] : coef) r.add_term(mon, zp, c);
    return r;
}

NonlinearODE split_shape(const PrimePower& pp, u64 N) {
    NonlinearODE s;
    s.modulus = pp.p;
    s.add_term(DerivMonomial{{0, 1}}, 0, 1);
    // - z (F^{p-1} - 1)^N = - z sum_k C(N,k) (-1)^{N-k} F^{(p-1)k}
    for (u64 k = 0; k <= N; ++k) {
        mpz_class c = binomial_mpz((long)N, (long)k);
        if ((N - k) % 2) c = -c;
        DerivMonomial mon;
        if (k > 0) mon[0] = (unsigned)((pp.p - 1) * k);
        s.add_term(mon, 1, -c);
    }
    return s;
}

NormalizedEq normalize_equation(const NonlinearODE& e, const PrimePower& pp, u64 N) {
    check_input(N >= 1, "normalisation needs mu = (p-1)N >= p-1");
    NonlinearODE ep = reduce_equation(e, PrimePower(pp.p, 1));
    NonlinearODE target = split_shape(pp, N);

    // candidates: pure-F terms of e mod p matched against the target's z^0 F term
    std::vector<std::pair<i64, u64>> candidates;
    auto it = ep.terms.find(DerivMonomial{{0, 1}});
    if (it != ep.terms.end())
        for (auto& [zp, c] : it->second) candidates.push_back({zp, c.get_ui()});
    for (auto& [k, c] : candidates) {
        // test e == c z^k target (mod p)
        NonlinearODE probe;
        probe.modulus = pp.p;
        for (auto& [mon, coef] : target.terms)
            for (auto& [zp, tc] : coef)
                probe.add_term(mon, zp + k, tc * mpz_class((unsigned long)c));
        if (probe == ep) {
            NormalizedEq n;
            n.N = N;
            n.unit = c;
            n.zshift = k;
            u64 cinv = inv_mod(c, pp.modulus);
            NonlinearODE full;
            full.modulus = pp.modulus;
            NonlinearODE em = reduce_equation(e, pp);
            for (auto& [mon, coef] : em.terms)
                for (auto& [zp, ec] : coef)
                    full.add_term(mon, zp - k, ec * mpz_class((unsigned long)cinv));
            n.full = full;
            // pP = (F - z(F^{p-1}-1)^N) - full, coefficientwise divisible by p
            NonlinearODE pp_part;
            pp_part.modulus = pp.modulus;
            NonlinearODE shape_alpha = split_shape(pp, N);
            for (auto& [mon, coef] : shape_alpha.terms)
                for (auto& [zp, tc] : coef) pp_part.add_term(mon, zp, tc);
            for (auto& [mon, coef] : full.terms)
                for (auto& [zp, fc] : coef) pp_part.add_term(mon, zp, -fc);
            for (auto& [mon, coef] : pp_part.terms)
                for (auto& [zp, c2] : coef)
                    check_internal(c2 % (unsigned long)pp.p == 0, "split remainder not divisible by p");
            n.pP = pp_part;
            return n;
        }
    }
    // name the residual terms for the error message
    std::ostringstream os;
    os << "mod-p shape mismatch: equation mod " << pp.p
       << " is not a unit times z^k (F - z(F^{p-1}-1)^N); reduced equation: "
       << equation_to_string(ep);
    throw hypothesis_violated(os.str());
}

Series<mpq_class> substitute_series(const NonlinearODE& e, const Series<mpq_class>& F) {
    size_t T = F.order();
    std::map<unsigned, Series<mpq_class>> derivs;
    derivs[0] = F;
    unsigned maxd = e.max_derivative();
    for (unsigned j = 1; j <= maxd; ++j) derivs[j] = derivs[j - 1].derivative();

    Series<mpq_class> out(T);
    for (auto& [mon, coef] : e.terms) {
        Series<mpq_class> prod(T);
        prod.c[0] = 1;
        for (auto& [ord, exp] : mon)
            for (unsigned i = 0; i < exp; ++i) prod = prod * derivs[ord];
        for (auto& [zp, c] : coef) {
            check_internal(zp >= 0, "series substitution with a z-pole");
            for (size_t n = 0; n + (size_t)zp < T; ++n) {
                if (prod.c[n] == 0) continue;
                out.c[n + (size_t)zp] += prod.c[n] * mpq_class(c);
            }
        }
    }
    return out;
}

namespace {

std::string monomial_to_string(const DerivMonomial& mon) {
    if (mon.empty()) return "1";
    std::string s;
    for (auto it = mon.rbegin(); it != mon.rend(); ++it) {
        auto [ord, exp] = *it;
        if (!s.empty()) s += "*";
        std::string base = "F";
        if (ord == 1) base = "F'";
        else if (ord == 2) base = "F''";
        else if (ord >= 3) base = "F^(" + std::to_string(ord) + ")";
        s += base;
        if (exp > 1) s += "^" + std::to_string(exp);
    }
    return s;
}

} // namespace

std::string equation_to_string(const NonlinearODE& e) {
    // collect printable terms with the documented ordering
    struct Item {
        unsigned fdeg;
        std::vector<std::pair<unsigned, unsigned>> mon;
        i64 zp;
        mpz_class c;
        DerivMonomial raw;
    };
    std::vector<Item> items;
    for (auto& [mon, coef] : e.terms) {
        unsigned fdeg = 0;
        std::vector<std::pair<unsigned, unsigned>> mv(mon.begin(), mon.end());
        for (auto& [o, x] : mon) fdeg += x;
        for (auto& [zp, c] : coef) items.push_back({fdeg, mv, zp, c, mon});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.fdeg != b.fdeg) return a.fdeg > b.fdeg;
        if (a.mon != b.mon) return a.mon > b.mon;
        return a.zp < b.zp;
    });
    std::ostringstream os;
    bool first = true;
    for (auto& t : items) {
        if (!first) os << " + ";
        first = false;
        os << t.c.get_str();
        if (t.zp != 0) os << "*z" << (t.zp == 1 ? "" : "^" + std::to_string(t.zp));
        if (!t.raw.empty()) os << "*" << monomial_to_string(t.raw);
    }
    if (first) os << "0";
    os << " = 0";
    if (e.modulus) os << "  (mod " << e.modulus << ")";
    return os.str();
}

u64 equation_hash(const NonlinearODE& e) {
    std::string s = equation_to_string(e);
    u64 h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace fsgc
