#include "evochain/chain_builder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "evochain/errors.hpp"
#include "evochain/rng.hpp"

namespace evochain {

namespace {

void check_state_cap(int64_t n_states, int64_t cap, const std::string& what) {
    if (n_states > cap) {
        throw InfeasibleError(what + " has N=" + std::to_string(n_states) +
                              " states, exceeding the cap of " + std::to_string(cap));
    }
}

// Index lookup shared by the population-chain builders.
class StateIndex {
  public:
    explicit StateIndex(const std::vector<Population>& states) {
        map_.reserve(states.size());
        for (size_t i = 0; i < states.size(); ++i) map_.emplace(states[i], static_cast<int>(i));
    }
    int at(const Population& p) const { return map_.at(p); }

  private:
    std::unordered_map<Population, int, PopulationHash> map_;
};

std::string format_param(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

std::vector<Population> enumerate_states(int n, int r, int64_t cap) {
    int64_t n_states = population_count(n, r);
    check_state_cap(n_states, cap, "population space (n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
    std::vector<Population> out;
    out.reserve(static_cast<size_t>(n_states));
    std::vector<int> counts(static_cast<size_t>(r), 0);
    // Colex ascending: the last coordinate varies slowest, recursively.
    auto rec = [&](auto&& self, int remaining, int top) -> void {
        if (top == 0) {
            counts[0] = remaining;
            out.emplace_back(counts);
            counts[0] = 0;
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[static_cast<size_t>(top)] = c;
            self(self, remaining - c, top - 1);
        }
        counts[static_cast<size_t>(top)] = 0;
    };
    rec(rec, n, r - 1);
    return out;
}

GaDynamics GaDynamics::pairwise(TypeSpace space, Fitness fitness, int n, LocalTransitionMatrix b,
                                bool with_replacement) {
    if (space.r() != fitness.r() || space.r() != b.r()) {
        throw ParameterError("type space, fitness and tensor sizes disagree");
    }
    if (n < 2) throw ParameterError("pairwise update needs population size n >= 2");
    GaDynamics dyn{std::move(space), std::move(fitness), n, Rule::PairwiseB,
                   std::move(b),     with_replacement,   false, 0.0};
    return dyn;
}

GaDynamics GaDynamics::toy_ga(int l) {
    int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(l))));
    if (l < 4 || l % 2 != 0 || root * root != l) {
        throw ParameterError("toy GA needs l even and a perfect square, got l=" + std::to_string(l));
    }
    GaDynamics dyn{TypeSpace::bitstring(l), toy_ga_fitness(l), root, Rule::ToyGA,
                   std::nullopt,            true,              false, 0.5};
    return dyn;
}

GaDynamics GaDynamics::single_bit_walk(int l) {
    GaDynamics dyn{TypeSpace::bitstring(l), constant_fitness(1 << l), 1, Rule::SingleBitWalk,
                   std::nullopt,            true,                     false, 0.0};
    return dyn;
}

GaDynamics GaDynamics::metropolis(int l, Fitness fitness, bool lazy) {
    if (fitness.r() != (1 << l)) throw ParameterError("metropolis fitness table must cover 2^l types");
    GaDynamics dyn{TypeSpace::bitstring(l), std::move(fitness), 1, Rule::Metropolis,
                   std::nullopt,            true,               lazy, 0.0};
    return dyn;
}

MarkovChain build_pairwise_update_chain(const GaDynamics& dyn, int64_t cap) {
    if (dyn.rule != GaDynamics::Rule::PairwiseB || !dyn.b) {
        throw ParameterError("dynamics is not a pairwise B update");
    }
    const int r = dyn.space.r();
    const int n = dyn.n;
    const LocalTransitionMatrix& b = *dyn.b;
    std::vector<Population> states = enumerate_states(n, r, cap);
    StateIndex index(states);
    const int n_states = static_cast<int>(states.size());
    Matrix q(n_states, n_states);
    int renormalized_states = 0;

    std::vector<int> work;
    for (int s = 0; s < n_states; ++s) {
        const Population& pop = states[static_cast<size_t>(s)];
        TypeDistribution p = selection_probability(pop, dyn.fitness);

        // Ordered parent pair distribution.
        std::vector<std::pair<std::pair<int, int>, double>> pairs;
        if (dyn.with_replacement) {
            double feasible_mass = 0.0;
            for (int u = 0; u < r; ++u) {
                if (p[static_cast<size_t>(u)] == 0.0) continue;
                for (int v = 0; v < r; ++v) {
                    double mass = p[static_cast<size_t>(u)] * p[static_cast<size_t>(v)];
                    if (mass == 0.0) continue;
                    if (n > 2 && u == v && pop.count(static_cast<Genotype>(u)) < 2) continue;
                    pairs.push_back({{u, v}, mass});
                    feasible_mass += mass;
                }
            }
            if (std::abs(feasible_mass - 1.0) > 1e-12) {
                ++renormalized_states;
                for (auto& e : pairs) e.second /= feasible_mass;
            }
        } else {
            // Second draw from the population minus the first individual.
            for (int u = 0; u < r; ++u) {
                if (p[static_cast<size_t>(u)] == 0.0) continue;
                double denom = 0.0;
                for (int v = 0; v < r; ++v) {
                    int c = pop.count(static_cast<Genotype>(v)) - (v == u ? 1 : 0);
                    denom += dyn.fitness(static_cast<Genotype>(v)) * c;
                }
                for (int v = 0; v < r; ++v) {
                    int c = pop.count(static_cast<Genotype>(v)) - (v == u ? 1 : 0);
                    if (c == 0) continue;
                    double mass = p[static_cast<size_t>(u)] * dyn.fitness(static_cast<Genotype>(v)) * c / denom;
                    pairs.push_back({{u, v}, mass});
                }
            }
        }

        for (const auto& [uv, pair_mass] : pairs) {
            auto [u, v] = uv;
            for (int w = 0; w < r; ++w) {
                for (int z = 0; z < r; ++z) {
                    double bw = b(u, v, w, z);
                    if (bw == 0.0) continue;
                    work = pop.counts();
                    if (n == 2) {
                        std::fill(work.begin(), work.end(), 0);
                    } else {
                        --work[static_cast<size_t>(u)];
                        --work[static_cast<size_t>(v)];
                    }
                    ++work[static_cast<size_t>(w)];
                    ++work[static_cast<size_t>(z)];
                    q(s, index.at(Population(work))) += pair_mass * bw;
                }
            }
        }
    }

    ChainLabels labels;
    labels.dynamic = "pairwise_b";
    labels.params["n"] = std::to_string(n);
    labels.params["r"] = std::to_string(r);
    labels.params["replacement"] = dyn.with_replacement ? "with" : "without";
    if (renormalized_states > 0) {
        labels.notes.push_back("selection renormalized over feasible ordered pairs in " +
                               std::to_string(renormalized_states) + " states");
    }
    return MarkovChain::over_populations(std::move(states), std::move(q), std::move(labels));
}

MarkovChain build_dictatorial_chain(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 0.125) {
        throw ParameterError("dictatorial chain needs 0 < epsilon <= 1/8, got " + format_param(epsilon));
    }
    // State order as printed in the source dynamics: mixed pair first.
    std::vector<Population> states{Population({1, 1}), Population({2, 0}), Population({0, 2})};
    const double e = epsilon;
    Matrix q(3, 3);
    q(0, 0) = 0.5;
    q(0, 1) = 0.25;
    q(0, 2) = 0.25;
    q(1, 0) = 2 * e;
    q(1, 1) = 1 - 4 * e;
    q(1, 2) = 2 * e;
    q(2, 0) = 2 * e;
    q(2, 1) = 2 * e;
    q(2, 2) = 1 - 4 * e;
    ChainLabels labels;
    labels.dynamic = "dictatorial";
    labels.params["epsilon"] = format_param(epsilon);
    return MarkovChain::over_populations(std::move(states), std::move(q), std::move(labels));
}

MarkovChain build_toy_ga_chain(int l, int64_t cap) {
    GaDynamics dyn = GaDynamics::toy_ga(l);
    const int r = dyn.space.r();
    const int n = dyn.n;
    int64_t n_states = population_count(n, r);
    check_state_cap(n_states, cap, "toy GA (l=" + std::to_string(l) + ")");
    std::vector<Population> states = enumerate_states(n, r, cap);
    StateIndex index(states);
    Matrix q(static_cast<int>(states.size()), static_cast<int>(states.size()));

    const double active = 1.0 - dyn.self_loop;
    const double inv_l = 1.0 / l;
    std::vector<int> work;
    for (int s = 0; s < static_cast<int>(states.size()); ++s) {
        const Population& pop = states[static_cast<size_t>(s)];
        q(s, s) += dyn.self_loop;

        double total_weight = 0.0;
        for (int u = 0; u < r; ++u) {
            total_weight += pop.count(static_cast<Genotype>(u)) * dyn.fitness(static_cast<Genotype>(u));
        }
        const double inv_f2 = 1.0 / (total_weight * total_weight);

        for (int u = 0; u < r; ++u) {
            int cu = pop.count(static_cast<Genotype>(u));
            if (cu == 0) continue;
            double fu = dyn.fitness(static_cast<Genotype>(u));

            // Same slot drawn twice: crossover is a no-op, both mutations hit
            // the one vector and may cancel.
            double p_same = cu * fu * fu * inv_f2;
            for (int a = 0; a < l; ++a) {
                for (int bpos = 0; bpos < l; ++bpos) {
                    Genotype w = static_cast<Genotype>(u) ^ (1u << a) ^ (1u << bpos);
                    work = pop.counts();
                    --work[static_cast<size_t>(u)];
                    ++work[w];
                    q(s, index.at(Population(work))) += active * p_same * inv_l * inv_l;
                }
            }

            // Ordered pair of distinct slots.
            for (int v = 0; v < r; ++v) {
                int cv = pop.count(static_cast<Genotype>(v));
                if (cv == 0) continue;
                double fv = dyn.fitness(static_cast<Genotype>(v));
                double p_pair = (u == v) ? cu * (cu - 1) * fu * fu * inv_f2 : cu * cv * fu * fv * inv_f2;
                if (p_pair == 0.0) continue;
                for (int c = 0; c < l; ++c) {
                    uint32_t mask = 1u << c;
                    Genotype up = (static_cast<Genotype>(u) & ~mask) | (static_cast<Genotype>(v) & mask);
                    Genotype vp = (static_cast<Genotype>(v) & ~mask) | (static_cast<Genotype>(u) & mask);
                    for (int a = 0; a < l; ++a) {
                        Genotype w = up ^ (1u << a);
                        for (int bpos = 0; bpos < l; ++bpos) {
                            Genotype z = vp ^ (1u << bpos);
                            work = pop.counts();
                            --work[static_cast<size_t>(u)];
                            --work[static_cast<size_t>(v)];
                            ++work[w];
                            ++work[z];
                            q(s, index.at(Population(work))) += active * p_pair * inv_l * inv_l * inv_l;
                        }
                    }
                }
            }
        }
    }

    ChainLabels labels;
    labels.dynamic = "toy_ga";
    labels.params["l"] = std::to_string(l);
    labels.params["n"] = std::to_string(n);
    return MarkovChain::over_populations(std::move(states), std::move(q), std::move(labels));
}

MarkovChain build_single_bit_walk(int l, int64_t cap) {
    check_state_cap(int64_t{1} << l, cap, "single-bit walk (l=" + std::to_string(l) + ")");
    const int n_states = 1 << l;
    Matrix q(n_states, n_states);
    for (int w = 0; w < n_states; ++w) {
        q(w, w) = 0.5;
        for (int pos = 0; pos < l; ++pos) q(w, w ^ (1 << pos)) = 0.5 / l;
    }
    ChainLabels labels;
    labels.dynamic = "single_bit_walk";
    labels.params["l"] = std::to_string(l);
    return MarkovChain::over_genotypes(l, std::move(q), std::move(labels));
}

MarkovChain build_metropolis_chain(const Fitness& f, int l, bool lazy, int64_t cap) {
    check_state_cap(int64_t{1} << l, cap, "metropolis walk (l=" + std::to_string(l) + ")");
    if (f.r() != (1 << l)) throw ParameterError("metropolis fitness table must cover 2^l types");
    const int n_states = 1 << l;
    Matrix q(n_states, n_states);
    for (int w = 0; w < n_states; ++w) {
        double stay = 1.0;
        for (int pos = 0; pos < l; ++pos) {
            int w2 = w ^ (1 << pos);
            double ratio = f(static_cast<Genotype>(w2)) / f(static_cast<Genotype>(w));
            double accept = std::min(1.0, ratio);
            q(w, w2) = accept / l;
            stay -= accept / l;
        }
        q(w, w) = stay;
    }
    ChainLabels labels;
    labels.dynamic = "metropolis";
    labels.params["l"] = std::to_string(l);
    labels.params["lazy"] = lazy ? "true" : "false";
    MarkovChain chain = MarkovChain::over_genotypes(l, std::move(q), std::move(labels));
    return lazy ? lazy_transform(chain) : chain;
}

MarkovChain build_random_reversible_chain(int n_states, uint64_t seed) {
    if (n_states < 3) throw ParameterError("random reversible chain needs at least 3 states");
    RngStream rng(seed, 0);
    std::vector<double> target(static_cast<size_t>(n_states));
    double total = 0.0;
    for (double& t : target) {
        t = std::exp(3.0 * rng.uniform01());
        total += t;
    }
    for (double& t : target) t /= total;

    Matrix q(n_states, n_states);
    for (int i = 0; i < n_states; ++i) {
        double stay = 1.0;
        for (int j = 0; j < n_states; ++j) {
            if (j == i) continue;
            double accept = std::min(1.0, target[static_cast<size_t>(j)] / target[static_cast<size_t>(i)]);
            q(i, j) = accept / (n_states - 1);
            stay -= q(i, j);
        }
        q(i, i) = stay;
    }
    std::vector<Population> states;
    states.reserve(static_cast<size_t>(n_states));
    for (int i = 0; i < n_states; ++i) {
        states.push_back(Population::of_copies(static_cast<Genotype>(i), 1, n_states));
    }
    ChainLabels labels;
    labels.dynamic = "random_reversible";
    labels.params["N"] = std::to_string(n_states);
    labels.params["seed"] = std::to_string(seed);
    return MarkovChain::over_populations(std::move(states), std::move(q), std::move(labels));
}

}  // namespace evochain
