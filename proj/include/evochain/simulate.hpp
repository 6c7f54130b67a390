#ifndef EVOCHAIN_SIMULATE_HPP
#define EVOCHAIN_SIMULATE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "evochain/chain_builder.hpp"
#include "evochain/genotype.hpp"
#include "evochain/markov_chain.hpp"
#include "evochain/rng.hpp"

namespace evochain {

struct Trajectory {
    std::vector<int> state_indices;  // X_0 .. X_t as chain state indices
    uint64_t seed;
    uint64_t stream;
    std::string dynamic;
};

// Samples one-step transitions from a chain's rows by inverse CDF.
class ChainSampler {
  public:
    explicit ChainSampler(const MarkovChain& chain);
    int step(int state, RngStream& rng) const;

  private:
    const MarkovChain& chain_;
    std::vector<std::vector<double>> row_cdf_;
};

// t steps of the exact chain from a start state, reproducible from
// (seed, stream).
Trajectory simulate(const MarkovChain& chain, int start, long t, uint64_t seed, uint64_t stream = 0);

// Matrix-free generation stepping of a GaDynamics; the population is kept
// both as identity-carrying slots and as an incrementally updated count
// vector, so no step touches all r types.
class GaSimulator {
  public:
    GaSimulator(const GaDynamics& dyn, const Population& start);

    void step(RngStream& rng);

    const std::vector<Genotype>& slots() const { return slots_; }
    const std::vector<int>& counts() const { return counts_; }
    Population population() const { return Population(counts_); }
    double best_fitness() const;

  private:
    void pairwise_step(RngStream& rng);
    void toy_ga_step(RngStream& rng);
    void walk_step(RngStream& rng);

    void replace(size_t slot, Genotype next);

    const GaDynamics& dyn_;
    int l_ = 0;
    std::vector<Genotype> slots_;
    std::vector<int> counts_;
};

// Matrix-free run recording chain state indices (the chain provides the
// state <-> index map and must describe the same dynamics).
Trajectory simulate_ga_indexed(const GaDynamics& dyn, const Population& start, long t,
                               uint64_t seed, const MarkovChain& chain, uint64_t stream = 0);

// Matrix-free run handing each generation's population to the visitor
// (start included as generation 0); nothing is stored.
void simulate_ga_stream(const GaDynamics& dyn, const Population& start, long t, uint64_t seed,
                        uint64_t stream, const std::function<void(long, const GaSimulator&)>& visit);

// Empirical state distribution c(P)/t over a trajectory, optionally
// dropping a burn-in prefix.
StateDistribution visit_frequencies(const Trajectory& traj, int n_states, size_t drop_prefix = 0);

// States whose population contains at least one maximum-fitness individual.
std::vector<int> optimal_state_set(const MarkovChain& chain, const Fitness& f);
double subset_mass(const StateDistribution& dist, const std::vector<int>& subset);

enum class StartPolicy { FixedAllZero, UniformRandom };

struct RestartRecord {
    bool success;               // final population holds a max-fitness individual
    double final_best_fitness;  // fittest individual of the final population
    Genotype final_best;
    double best_seen_fitness;  // best fitness observed anywhere in the run
};

struct RestartOutcome {
    std::vector<RestartRecord> restarts;
    int success_count = 0;
    double success_rate = 0.0;
    Genotype global_best = 0;
    double global_best_fitness = 0.0;
    double boosting_estimate = 0.0;  // 1 - (1 - success_rate)^k
    double elapsed_seconds = 0.0;
    uint64_t seed = 0;
    long generations = 0;
};

// The restart program: t_restarts independent runs of T generations each,
// taking the fittest individual of each final population.
RestartOutcome restart_optimizer(const GaDynamics& dyn, long T, int t_restarts, uint64_t seed,
                                 StartPolicy start_policy = StartPolicy::FixedAllZero);

struct SuccessBoundConstants {
    double c;      // 1 - e^{-sqrt(2/pi)}
    double alpha;  // c / (16 (1 - c))
};
SuccessBoundConstants success_bound_constants();

// 1 - 2 e^{-alpha t}: lower bound on the probability that t restarts of the
// balanced-string GA see at least one optimal individual.
double success_bound(int t_restarts);

// Monte Carlo estimate of the fraction of populations of sqrt(l) uniform
// individuals over {0,1}^l that contain a balanced (popcount l/2) string.
double optimal_population_fraction(int l, long sample_size, uint64_t seed);

// Exact value by enumerating all count vectors with multinomial weights
// (small l only).
double exact_optimal_population_fraction(int l, int64_t cap = kDefaultStateCap);

}  // namespace evochain

#endif
