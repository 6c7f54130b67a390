#include "evochain/markov_chain.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "evochain/errors.hpp"

namespace evochain {

MarkovChain MarkovChain::over_populations(std::vector<Population> states, Matrix q, ChainLabels labels) {
    MarkovChain c;
    c.kind_ = StateKind::PopulationVector;
    c.states_ = std::move(states);
    c.q_ = std::move(q);
    c.labels_ = std::move(labels);
    if (static_cast<int>(c.states_.size()) != c.q_.rows() || c.q_.rows() != c.q_.cols()) {
        throw ParameterError("state list and transition matrix sizes disagree");
    }
    c.state_index_.reserve(c.states_.size());
    for (size_t i = 0; i < c.states_.size(); ++i) {
        c.state_index_.emplace(c.states_[i], static_cast<int>(i));
    }
    c.validate();
    return c;
}

MarkovChain MarkovChain::over_genotypes(int l, Matrix q, ChainLabels labels) {
    MarkovChain c;
    c.kind_ = StateKind::Genotype;
    c.genotype_bits_ = l;
    c.q_ = std::move(q);
    c.labels_ = std::move(labels);
    if (c.q_.rows() != c.q_.cols() || c.q_.rows() != (1 << l)) {
        throw ParameterError("genotype chain needs a 2^l x 2^l matrix");
    }
    c.validate();
    return c;
}

const std::vector<Population>& MarkovChain::population_states() const {
    if (kind_ != StateKind::PopulationVector) {
        throw ParameterError("chain states are genotypes, not populations");
    }
    return states_;
}

int MarkovChain::index_of(const Population& p) const {
    auto it = state_index_.find(p);
    if (it == state_index_.end()) throw ParameterError("population " + p.label() + " is not a state");
    return it->second;
}

std::string MarkovChain::state_label(int i) const {
    if (kind_ == StateKind::Genotype) {
        return TypeSpace::bitstring(genotype_bits_).type_label(static_cast<Genotype>(i));
    }
    return states_[static_cast<size_t>(i)].label();
}

void MarkovChain::validate(double row_tol) const {
    for (int i = 0; i < size(); ++i) {
        double total = 0.0;
        for (int j = 0; j < size(); ++j) {
            double x = q_(i, j);
            if (x < 0.0 || !std::isfinite(x)) {
                throw ParameterError("transition matrix entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") is negative or non-finite");
            }
            total += x;
        }
        if (std::abs(total - 1.0) > row_tol) {
            throw ParameterError("row " + std::to_string(i) + " sums to " + std::to_string(total));
        }
    }
}

ErgodicityReport ergodicity_report(const MarkovChain& chain) {
    const Matrix& q = chain.q();
    const int n = chain.size();
    auto bfs = [&](bool forward) {
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::deque<int> queue{0};
        seen[0] = 1;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < n; ++v) {
                double edge = forward ? q(u, v) : q(v, u);
                if (edge > 0.0 && !seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = 1;
                    queue.push_back(v);
                }
            }
        }
        return seen;
    };
    auto fwd = bfs(true);
    auto bwd = bfs(false);

    ErgodicityReport report;
    for (int i = 0; i < n; ++i) {
        if (!fwd[static_cast<size_t>(i)] || !bwd[static_cast<size_t>(i)]) report.unreachable.push_back(i);
    }
    report.irreducible = report.unreachable.empty();

    // Period of state 0's class: gcd of depth[u] + 1 - depth[v] over support edges
    // inside the class reached by forward BFS.
    std::vector<int> depth(static_cast<size_t>(n), -1);
    std::deque<int> queue{0};
    depth[0] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v = 0; v < n; ++v) {
            if (q(u, v) > 0.0 && depth[static_cast<size_t>(v)] < 0) {
                depth[static_cast<size_t>(v)] = depth[static_cast<size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    int g = 0;
    for (int u = 0; u < n; ++u) {
        if (depth[static_cast<size_t>(u)] < 0) continue;
        for (int v = 0; v < n; ++v) {
            if (q(u, v) > 0.0 && depth[static_cast<size_t>(v)] >= 0) {
                int diff = depth[static_cast<size_t>(u)] + 1 - depth[static_cast<size_t>(v)];
                g = std::gcd(g, std::abs(diff));
            }
        }
    }
    report.period = (g == 0) ? 0 : g;
    report.aperiodic = (report.period == 1);
    return report;
}

void require_ergodic(const MarkovChain& chain) {
    ErgodicityReport report = ergodicity_report(chain);
    if (report.ergodic()) return;
    std::string msg;
    if (!report.irreducible) {
        msg = "chain is reducible; " + std::to_string(report.unreachable.size()) +
              " states not strongly connected with state 0 (first: " +
              std::to_string(report.unreachable.front()) + ")";
    } else {
        msg = "chain is periodic with period " + std::to_string(report.period);
    }
    throw StructuralError(msg, report.unreachable, report.period);
}

MarkovChain lazy_transform(const MarkovChain& chain) {
    Matrix q(chain.size(), chain.size());
    for (int i = 0; i < chain.size(); ++i) {
        for (int j = 0; j < chain.size(); ++j) {
            q(i, j) = 0.5 * chain.q()(i, j) + (i == j ? 0.5 : 0.0);
        }
    }
    ChainLabels labels = chain.labels();
    labels.notes.push_back("lazy transform applied: Q' = (I + Q)/2");
    if (chain.kind() == MarkovChain::StateKind::Genotype) {
        return MarkovChain::over_genotypes(chain.genotype_bits(), std::move(q), std::move(labels));
    }
    return MarkovChain::over_populations(chain.population_states(), std::move(q), std::move(labels));
}

std::string chain_to_json(const MarkovChain& chain) {
    nlohmann::json j;
    j["kind"] = chain.kind() == MarkovChain::StateKind::Genotype ? "genotype" : "population";
    nlohmann::json states = nlohmann::json::array();
    if (chain.kind() == MarkovChain::StateKind::Genotype) {
        j["l"] = chain.genotype_bits();
        for (int i = 0; i < chain.size(); ++i) states.push_back(chain.state_label(i));
    } else {
        for (const Population& p : chain.population_states()) states.push_back(p.counts());
    }
    j["states"] = std::move(states);
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < chain.size(); ++i) {
        rows.push_back(std::vector<double>(chain.q().row(i), chain.q().row(i) + chain.size()));
    }
    j["Q"] = std::move(rows);
    j["labels"] = {{"dynamic", chain.labels().dynamic},
                   {"params", chain.labels().params},
                   {"notes", chain.labels().notes}};
    return j.dump(2);
}

void save_chain_json(const MarkovChain& chain, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write chain file: " + path);
    out << chain_to_json(chain) << "\n";
}

MarkovChain load_chain_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open chain file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("chain file " + path + ": " + e.what());
    }
    if (!j.contains("Q") || !j["Q"].is_array()) {
        throw ParseError("chain file " + path + ": missing matrix field \"Q\"");
    }
    const auto& rows = j["Q"];
    const int n = static_cast<int>(rows.size());
    if (n < 2) throw ParseError("chain file " + path + ": Q needs at least 2 states");
    Matrix q(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw ParseError("chain file " + path + ": row " + std::to_string(i) +
                             " has wrong length (want " + std::to_string(n) + ")");
        }
        for (int k = 0; k < n; ++k) {
            if (!row[static_cast<size_t>(k)].is_number()) {
                throw ParseError("chain file " + path + ": row " + std::to_string(i) + " field " +
                                 std::to_string(k) + " is not a number");
            }
            q(i, k) = row[static_cast<size_t>(k)].get<double>();
        }
    }
    ChainLabels labels;
    labels.dynamic = "imported";
    if (j.contains("labels") && j["labels"].is_object()) {
        const auto& lj = j["labels"];
        if (lj.contains("dynamic") && lj["dynamic"].is_string()) labels.dynamic = lj["dynamic"];
        if (lj.contains("params") && lj["params"].is_object()) {
            for (auto it = lj["params"].begin(); it != lj["params"].end(); ++it) {
                if (it.value().is_string()) labels.params[it.key()] = it.value().get<std::string>();
            }
        }
        if (lj.contains("notes") && lj["notes"].is_array()) {
            for (const auto& note : lj["notes"]) {
                if (note.is_string()) labels.notes.push_back(note.get<std::string>());
            }
        }
    }
    try {
        if (j.contains("kind") && j["kind"] == "genotype" && j.contains("l") && j["l"].is_number_integer()) {
            int l = j["l"].get<int>();
            if ((1 << l) != n) throw ParseError("chain file " + path + ": l and matrix size disagree");
            return MarkovChain::over_genotypes(l, std::move(q), std::move(labels));
        }
        std::vector<Population> states;
        if (j.contains("states") && j["states"].is_array() &&
            static_cast<int>(j["states"].size()) == n && j["states"][0].is_array()) {
            for (const auto& s : j["states"]) states.emplace_back(s.get<std::vector<int>>());
        } else {
            // No usable state list: label state i as the singleton population {i}.
            for (int i = 0; i < n; ++i) states.push_back(Population::of_copies(static_cast<Genotype>(i), 1, n));
        }
        return MarkovChain::over_populations(std::move(states), std::move(q), std::move(labels));
    } catch (const ParameterError& e) {
        throw ParseError("chain file " + path + ": " + e.what());
    }
}

bool chains_equal(const MarkovChain& a, const MarkovChain& b, double tol) {
    if (a.size() != b.size()) return false;
    if (a.kind() != b.kind()) return false;
    std::vector<int> a_to_b(static_cast<size_t>(a.size()));
    if (a.kind() == MarkovChain::StateKind::Genotype) {
        if (a.genotype_bits() != b.genotype_bits()) return false;
        for (int i = 0; i < a.size(); ++i) a_to_b[static_cast<size_t>(i)] = i;
    } else {
        try {
            for (int i = 0; i < a.size(); ++i) {
                a_to_b[static_cast<size_t>(i)] = b.index_of(a.population_states()[static_cast<size_t>(i)]);
            }
        } catch (const ParameterError&) {
            return false;
        }
    }
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < a.size(); ++j) {
            double qa = a.q()(i, j);
            double qb = b.q()(a_to_b[static_cast<size_t>(i)], a_to_b[static_cast<size_t>(j)]);
            if (std::abs(qa - qb) > tol) return false;
        }
    }
    return true;
}

}  // namespace evochain
