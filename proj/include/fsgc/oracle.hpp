#pragma once

// Exact ground truth over the rationals: the ODE coefficients theta_mu, the
// hypergeometric sequence g_lambda, and the free subgroup numbers f_lambda.

#include <vector>

#include "fsgc/graph.hpp"

namespace fsgc {

struct ThetaCoeffs {
    std::vector<mpz_class> theta;   // theta_0 .. theta_mu
    u64 m = 0;
    i64 mu = 0;
};

// h(j) = m(j+1) prod_{kappa | m} prod_{1<=k<=m, (m,k)=kappa} (jm+k)^{zeta_kappa};
// integral for every valid type.
mpz_class oracle_h(const GroupType& t, unsigned long j);

// theta_mu = (1/mu!) sum_j (-1)^{mu-j} C(mu,j) h(j), integral.
ThetaCoeffs theta_coeffs(const GroupType& t);

// g_0 = 1 and m(l+1) g_{l+1} = (sum_mu theta_mu l(l-1)...(l-mu+1)) g_l.
std::vector<mpq_class> g_sequence(const ThetaCoeffs& th, size_t bound);

// f_lambda = m lambda g_lambda - sum_{mu=1}^{lambda-1} g_mu f_{lambda-mu};
// result[k] = f_k for 1 <= k <= bound (result[0] unused). Integrality and
// non-negativity are asserted at every step.
std::vector<mpz_class> f_direct(const GroupType& t, size_t bound);

// Same recursion, abandoned once the deadline (seconds) passes; *reached
// reports how far the sequence got. Used by the timing comparison.
std::vector<mpz_class> f_direct_partial(const GroupType& t, size_t bound,
                                        double deadline_seconds, size_t* reached);

} // namespace fsgc
