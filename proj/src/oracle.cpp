#include "fsgc/oracle.hpp"

#include <chrono>

namespace fsgc {

mpz_class oracle_h(const GroupType& t, unsigned long j) {
    mpq_class h(t.m * (j + 1));
    for (auto& [kappa, z] : t.zeta) {
        if (z == 0) continue;
        mpz_class block = 1;
        for (u64 k = kappa; k <= t.m; k += kappa)
            if (std::gcd(t.m, k) == kappa) block *= mpz_class((unsigned long)(j * t.m + k));
        mpq_class factor(block);
        if (z > 0) {
            for (i64 i = 0; i < z; ++i) h *= factor;
        } else {
            for (i64 i = 0; i < -z; ++i) h /= factor;
        }
    }
    check_internal(h.get_den() == 1, "h(j) is not integral");
    return h.get_num();
}

ThetaCoeffs theta_coeffs(const GroupType& t) {
    ThetaCoeffs th;
    th.m = t.m;
    th.mu = free_rank(t);
    check_input(th.mu >= 1, "type has free rank < 1");
    std::vector<mpz_class> h((size_t)th.mu + 1);
    for (size_t j = 0; j <= (size_t)th.mu; ++j) h[j] = oracle_h(t, j);
    for (size_t mu = 0; mu <= (size_t)th.mu; ++mu) {
        mpz_class sum = 0;
        for (size_t j = 0; j <= mu; ++j) {
            mpz_class term = binomial_mpz((long)mu, (long)j) * h[j];
            if ((mu - j) % 2) sum -= term;
            else sum += term;
        }
        mpz_class fact = factorial_mpz(mu), q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), sum.get_mpz_t(), fact.get_mpz_t());
        check_internal(r == 0, "theta coefficient is not integral");
        th.theta.push_back(q);
    }
    return th;
}

namespace {

// sum_mu theta_mu * lambda (lambda-1) ... (lambda-mu+1); by Newton interpolation
// this equals h(lambda).
mpz_class theta_falling_sum(const ThetaCoeffs& th, unsigned long lambda) {
    mpz_class sum = 0, falling = 1;
    for (size_t mu = 0; mu < th.theta.size(); ++mu) {
        if (mu > 0) falling *= mpz_class((long)lambda - (long)mu + 1);
        sum += th.theta[mu] * falling;
    }
    return sum;
}

} // namespace

std::vector<mpq_class> g_sequence(const ThetaCoeffs& th, size_t bound) {
    std::vector<mpq_class> g(bound + 1);
    g[0] = 1;
    for (size_t l = 0; l < bound; ++l) {
        mpq_class step(theta_falling_sum(th, l), mpz_class(th.m * (l + 1)));
        step.canonicalize();
        g[l + 1] = g[l] * step;
    }
    return g;
}

namespace {

std::vector<mpz_class> f_direct_impl(const GroupType& t, size_t bound,
                                     double deadline_seconds, size_t* reached) {
    auto start = std::chrono::steady_clock::now();
    ThetaCoeffs th = theta_coeffs(t);
    u64 m = t.m;

    // Integer-only form of the transform: with N_l = prod_{j<l} h(j) and
    // D_l = m^l l!, the recursion reads
    //   f_l = (N_l - sum_mu C_mu f_{l-mu}) / D_{l-1},  C_mu = N_mu D_{l-1} / D_mu.
    std::vector<mpz_class> f(bound + 1);
    std::vector<mpz_class> C;          // C[mu], maintained for the current l
    mpz_class N = 1;                   // N_l, running product of h
    mpz_class D_prev = 1;              // D_{l-1}
    size_t l = 0;
    for (l = 1; l <= bound; ++l) {
        if (l > 1) {
            mpz_class scale = mpz_class(m) * (unsigned long)(l - 1);
            for (auto& c : C) c *= scale;
            D_prev *= scale;
            C.push_back(N);            // C_{l-1} = N_{l-1}
        }
        N *= theta_falling_sum(th, l - 1);   // = h(l-1), checked integral via theta route
        mpz_class acc = N;
        for (size_t mu = 1; mu + 1 <= l; ++mu) acc -= C[mu - 1] * f[l - mu];
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), D_prev.get_mpz_t());
        check_internal(r == 0, "f_lambda is not integral at lambda=" + std::to_string(l));
        check_internal(q >= 0, "negative f_lambda at lambda=" + std::to_string(l));
        f[l] = q;
        if (deadline_seconds > 0 && (l & 31) == 0) {
            double elapsed = std::chrono::duration<double>(
                std::chrono::steady_clock::now() - start).count();
            if (elapsed > deadline_seconds) { ++l; break; }
        }
    }
    if (reached) *reached = std::min(l - 1, bound);
    return f;
}

} // namespace

std::vector<mpz_class> f_direct(const GroupType& t, size_t bound) {
    return f_direct_impl(t, bound, 0, nullptr);
}

std::vector<mpz_class> f_direct_partial(const GroupType& t, size_t bound,
                                        double deadline_seconds, size_t* reached) {
    return f_direct_impl(t, bound, deadline_seconds, reached);
}

} // namespace fsgc
