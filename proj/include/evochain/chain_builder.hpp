#ifndef EVOCHAIN_CHAIN_BUILDER_HPP
#define EVOCHAIN_CHAIN_BUILDER_HPP

#include <cstdint>
#include <optional>

#include "evochain/genotype.hpp"
#include "evochain/local_tensor.hpp"
#include "evochain/markov_chain.hpp"

namespace evochain {

inline constexpr int64_t kDefaultStateCap = 200000;

// All size-n count vectors over r types, colexicographic ascending.
// Throws InfeasibleError naming N when the count exceeds the cap.
std::vector<Population> enumerate_states(int n, int r, int64_t cap = kDefaultStateCap);

// Bundles one of the evolutionary dynamics with its parameters.
struct GaDynamics {
    enum class Rule { PairwiseB, ToyGA, SingleBitWalk, Metropolis };

    TypeSpace space;
    Fitness fitness;
    int n;  // population size (1 for the singleton walks)
    Rule rule;

    std::optional<LocalTransitionMatrix> b;  // PairwiseB
    bool with_replacement = true;            // PairwiseB pair selection mode
    bool lazy = false;                       // Metropolis extra self-loop
    double self_loop = 0.5;                  // ToyGA stay-put probability

    static GaDynamics pairwise(TypeSpace space, Fitness fitness, int n, LocalTransitionMatrix b,
                               bool with_replacement = true);
    // Population sqrt(l) over {0,1}^l, fitness 1 on balanced strings else 1/2.
    static GaDynamics toy_ga(int l);
    static GaDynamics single_bit_walk(int l);
    static GaDynamics metropolis(int l, Fitness fitness, bool lazy = false);
};

// Exact chain of the sample-pair / replace-pair dynamics: ordered parent
// pairs drawn by fitness-proportional selection, offspring by the B tensor.
// With replacement and n > 2, ordered pairs (u,u) with P(u) < 2 get their
// mass renormalized away (recorded in the chain notes). With n = 2 the
// offspring pair simply becomes the next population, as no other
// individuals remain.
MarkovChain build_pairwise_update_chain(const GaDynamics& dyn, int64_t cap = kDefaultStateCap);

// The 3-state coin chain over states [{0,1}, {0,0}, {1,1}] with rows
// ((1/2, 1/4, 1/4), (2e, 1-4e, 2e), (2e, 2e, 1-4e)), 0 < epsilon <= 1/8.
MarkovChain build_dictatorial_chain(double epsilon);

// Exact chain of the size-sqrt(l) genetic algorithm: 1/2 self-loop, ordered
// slot pair by fitness-proportional selection, one-bit crossover swap, then
// one guaranteed single-bit mutation per offspring.
MarkovChain build_toy_ga_chain(int l, int64_t cap = kDefaultStateCap);

// Lazy walk on the l-cube: pick a position uniformly, flip it with
// probability 1/2.
MarkovChain build_single_bit_walk(int l, int64_t cap = kDefaultStateCap);

// Single-bit-flip proposal filtered by fitness: accept improving moves,
// else accept with probability f(w')/f(w). Stationary distribution f/sum f.
MarkovChain build_metropolis_chain(const Fitness& f, int l, bool lazy = false,
                                   int64_t cap = kDefaultStateCap);

// Reversible-by-construction test chain: Metropolis filter over a random
// positive target distribution with a complete-graph proposal.
MarkovChain build_random_reversible_chain(int n_states, uint64_t seed);

}  // namespace evochain

#endif
