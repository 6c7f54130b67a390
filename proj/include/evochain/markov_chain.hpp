#ifndef EVOCHAIN_MARKOV_CHAIN_HPP
#define EVOCHAIN_MARKOV_CHAIN_HPP

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "evochain/genotype.hpp"
#include "evochain/linalg.hpp"

namespace evochain {

struct ChainLabels {
    std::string dynamic;                        // "dictatorial", "toy_ga", ...
    std::map<std::string, std::string> params;  // parameter name -> printed value
    std::vector<std::string> notes;             // renormalization / transform records
};

// A finite Markov chain over population states (count vectors) or over
// singleton genotype states, with its row-stochastic transition matrix.
class MarkovChain {
  public:
    enum class StateKind { PopulationVector, Genotype };

    static MarkovChain over_populations(std::vector<Population> states, Matrix q, ChainLabels labels);
    static MarkovChain over_genotypes(int l, Matrix q, ChainLabels labels);

    int size() const { return q_.rows(); }
    const Matrix& q() const { return q_; }
    StateKind kind() const { return kind_; }
    const ChainLabels& labels() const { return labels_; }
    ChainLabels& labels() { return labels_; }

    const std::vector<Population>& population_states() const;
    int genotype_bits() const { return genotype_bits_; }

    // Index of a population state; throws ParameterError if absent.
    int index_of(const Population& p) const;
    // Display label of state i ("1,0,1" counts or "0101" bitstring).
    std::string state_label(int i) const;

    // Verifies nonnegativity and row sums within tolerance.
    void validate(double row_tol = 1e-10) const;

  private:
    MarkovChain() = default;
    StateKind kind_ = StateKind::PopulationVector;
    std::vector<Population> states_;
    std::unordered_map<Population, int, PopulationHash> state_index_;
    int genotype_bits_ = 0;
    Matrix q_;
    ChainLabels labels_;
};

struct ErgodicityReport {
    bool irreducible = false;
    bool aperiodic = false;
    std::vector<int> unreachable;  // states not strongly connected with state 0
    int period = 1;                // gcd of support-graph cycle lengths through state 0
    bool ergodic() const { return irreducible && aperiodic; }
};

// Irreducibility by forward/backward reachability from state 0 on the
// support graph; period by the gcd of (depth[u] + 1 - depth[v]) over edges.
ErgodicityReport ergodicity_report(const MarkovChain& chain);

// Throws StructuralError (naming unreachable states or the period) unless ergodic.
void require_ergodic(const MarkovChain& chain);

// Q' = (I + Q) / 2; same states, transform recorded in the labels.
MarkovChain lazy_transform(const MarkovChain& chain);

// {"kind", "states", "Q", "labels"} with full-precision matrix entries.
std::string chain_to_json(const MarkovChain& chain);
void save_chain_json(const MarkovChain& chain, const std::string& path);
// Accepts any file with a row-stochastic "Q"; states/labels optional.
MarkovChain load_chain_json(const std::string& path);

// True when both chains have the same state set and the transition
// probabilities agree entrywise (aligned by state identity) within tol.
bool chains_equal(const MarkovChain& a, const MarkovChain& b, double tol);

}  // namespace evochain

#endif
