#ifndef EVOCHAIN_SPECTRAL_HPP
#define EVOCHAIN_SPECTRAL_HPP

#include <vector>

#include "evochain/genotype.hpp"
#include "evochain/markov_chain.hpp"

namespace evochain {

enum class StationaryMethod { DirectSolve, PowerIteration };

// Unique stationary distribution of an ergodic chain. DirectSolve eliminates
// on (Q^T - I) with a normalization row; PowerIteration iterates pi <- pi Q.
// Throws StructuralError when the chain is not ergodic.
StateDistribution stationary_distribution(const MarkovChain& chain,
                                          StationaryMethod method = StationaryMethod::DirectSolve,
                                          double tol = 1e-12);

struct ReversibilityCheck {
    bool reversible;
    double max_violation;  // max over (i,j) of |pi_i q_ij - pi_j q_ji|
};

ReversibilityCheck check_reversibility(const MarkovChain& chain, const StateDistribution& pi,
                                       double tol = 1e-12);

struct SpectralSummary {
    enum class Method { ExactSymmetrized, PowerIterationApprox };

    std::vector<double> eigenvalues;  // sorted descending, lambda_0 = 1 first
    double lambda_max;                // max(|lambda_1|, |lambda_{N-1}|)
    double lambda_1;
    double lambda_min;                // lambda_{N-1}
    bool reversible;
    Method method;
};

// Real spectrum of a reversible chain via cyclic Jacobi on the symmetric
// conjugate D^{1/2} Q D^{-1/2}. Throws Error for non-reversible input,
// pointing at the approximate path.
SpectralSummary symmetrized_spectrum(const MarkovChain& chain, const StateDistribution& pi,
                                     double reversibility_tol = 1e-10);

struct LambdaMaxEstimate {
    double value;
    SpectralSummary::Method method;
};

// Exact on reversible chains; geometric decay rate fitted from the r.p.d.
// curve otherwise (tagged approximate).
LambdaMaxEstimate lambda_max_estimate(const MarkovChain& chain);

// Relative pointwise distance after t steps over the state subset
// (all states when subset is empty):
// Delta_U(t) = max_{i,j in U} |q^t_ij - pi_j| / pi_j.
double rpd(const MarkovChain& chain, const StateDistribution& pi, long t,
           const std::vector<int>& subset = {});

// Delta(t) for t = 0..t_max over the full state space.
std::vector<double> rpd_table(const MarkovChain& chain, const StateDistribution& pi, int t_max);

struct MixingRow {
    int t;
    double delta;
    double lemma1_upper;  // lambda_max^t / pi_min (NaN when spectrum unknown)
    double lemma2_lower;  // lambda_max^t (NaN when spectrum unknown)
};

struct MixingReport {
    double eps;
    int tau;          // min t with Delta(t') <= eps for all t' >= t; -1 if not found
    bool conclusive;  // true when the spectral envelope certifies the tail
    bool reversible;
    double lambda_max;  // NaN when not exactly known
    double pi_min;
    std::vector<MixingRow> table;
};

// tau(eps) with a per-t table. Reversible chains scan up to the Lemma-1
// cutoff, which certifies every later t; otherwise the scan is capped and
// the report flagged inconclusive.
MixingReport mixing_time(const MarkovChain& chain, double eps, int scan_cap = 20000);

struct SandwichRow {
    int t;
    double lower;
    double delta;
    double upper;
    bool lower_binding;  // Lemma 2 applies at this t (even t, or any t if spectrum nonnegative)
    bool pass;
};

struct SandwichReport {
    std::vector<SandwichRow> rows;  // t = 1..t_max
    bool all_pass;
    double lambda_max;
    double pi_min;
    bool nonneg_spectrum;
};

// Verifies lambda_max^t <= Delta(t) <= lambda_max^t / pi_min with 1e-9
// slack on every binding row, t = 1..t_max.
SandwichReport verify_spectral_sandwich(const MarkovChain& chain, int t_max);

}  // namespace evochain

#endif
