#pragma once

// The nonlinear polynomial differential equation satisfied by the generating
// function F(z): derivation from the linear ODE for G(z), reduction mod p^alpha,
// and normalisation to the split F - z(F^{p-1}-1)^N - pP = 0.

#include <map>
#include <string>

#include "fsgc/oracle.hpp"
#include "fsgc/ring.hpp"

namespace fsgc {

// derivative order -> exponent; {} is the F-free monomial, {0:3} means F^3,
// {0:1, 2:1} means F * F''.
using DerivMonomial = std::map<unsigned, unsigned>;

struct NonlinearODE {
    // monomial -> (z-power -> coefficient); exact integers when modulus == 0,
    // canonical representatives in [0, modulus) otherwise.
    std::map<DerivMonomial, std::map<i64, mpz_class>> terms;
    u64 modulus = 0;

    bool operator==(const NonlinearODE& o) const { return modulus == o.modulus && terms == o.terms; }
    void add_term(const DerivMonomial& mon, i64 zpow, const mpz_class& c);
    size_t term_count() const;
    unsigned max_derivative() const;
    unsigned max_f_degree() const;
};

NonlinearODE derive_f_equation(const ThetaCoeffs& theta);
NonlinearODE reduce_equation(const NonlinearODE& e, const PrimePower& pp);

struct NormalizedEq {
    u64 N = 0;
    NonlinearODE full;       // c^{-1} z^{-k} e, reduced mod p^alpha
    NonlinearODE pP;         // full = F - z(F^{p-1}-1)^N - pP; every coefficient divisible by p
    u64 unit = 1;            // the constant c
    i64 zshift = 0;          // the exponent k
};

NormalizedEq normalize_equation(const NonlinearODE& e, const PrimePower& pp, u64 N);

// The split's mod-p target: F - z(F^{p-1}-1)^N reduced mod p.
NonlinearODE split_shape(const PrimePower& pp, u64 N);

// Substitute a truncated series for F and return the residual series.
Series<mpq_class> substitute_series(const NonlinearODE& e, const Series<mpq_class>& F);

// Deterministic layout: descending total F-degree, then derivative order,
// then ascending z-power.
std::string equation_to_string(const NonlinearODE& e);

u64 equation_hash(const NonlinearODE& e);

} // namespace fsgc
