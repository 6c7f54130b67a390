#ifndef EVOCHAIN_DENSITY_HPP
#define EVOCHAIN_DENSITY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "evochain/genotype.hpp"
#include "evochain/local_tensor.hpp"

namespace evochain {

// Infinite-population one-generation map:
// p'(z) = sum_{u,v} p(u) p(v) sum_w b(u,v,w,z).
TypeDistribution quadratic_map(const TypeDistribution& p, const LocalTransitionMatrix& b);

struct EquilibriumResult {
    TypeDistribution rho;
    long steps;
    double residual;                          // L-inf of g(rho) - rho
    std::vector<std::vector<double>> trace;   // iterates p^0 ... p^steps
};

// Iterates p <- g(p) until the successive L-inf change is <= tol, then
// verifies the fixed-point residual within 10*tol. Throws ConvergenceError
// carrying the last iterate if max_iter is exceeded.
EquilibriumResult iterate_to_equilibrium(const TypeDistribution& p0, const LocalTransitionMatrix& b,
                                         double tol = 1e-12, long max_iter = 100000);

struct ChernoffReport {
    double alpha_prime;      // eps^2 s / 3
    double pair_bound;       // 2 / e^alpha'
    double union_bound;      // 2 r^2 / e^alpha'
    double abs_error_bound;  // eps * r, holding with confidence 1 - union_bound
    double confidence;       // 1 - union_bound (clamped at 0)
    std::vector<std::string> warnings;
};

// Large-sample error bounds for estimating p' from s sampled pairs.
// Side conditions outside the analysed regime are reported as warnings.
ChernoffReport chernoff_sample_error(const TypeDistribution& p, int64_t s, double eps);

// t0 = log N / (4 log n): generations after which the n^4-fanout of
// small-sample updates can first cover all N populations.
double reachable_generations_estimate(int64_t n_states, int n);

}  // namespace evochain

#endif
