#include "evochain/genotype.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "evochain/errors.hpp"

namespace evochain {

namespace {
constexpr double kSumTolerance = 1e-12;
}

TypeSpace TypeSpace::abstract(int r) {
    if (r < 2) throw ParameterError("type space needs r >= 2, got r=" + std::to_string(r));
    return TypeSpace(r, std::nullopt);
}

TypeSpace TypeSpace::bitstring(int l) {
    if (l < 1 || l > 30) throw ParameterError("bitstring length out of range: l=" + std::to_string(l));
    return TypeSpace(1 << l, l);
}

int TypeSpace::bits() const {
    if (!bits_) throw ParameterError("abstract type space has no bitstring length");
    return *bits_;
}

std::string TypeSpace::type_label(Genotype u) const {
    if (!bits_) return std::to_string(u);
    std::string s(static_cast<size_t>(*bits_), '0');
    for (int i = 0; i < *bits_; ++i) {
        if (u & (1u << (*bits_ - 1 - i))) s[static_cast<size_t>(i)] = '1';
    }
    return s;
}

Fitness::Fitness(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw ParameterError("fitness table needs at least 2 types");
    for (size_t u = 0; u < values_.size(); ++u) {
        if (!(values_[u] > 0.0) || !std::isfinite(values_[u])) {
            throw ParameterError("fitness must be strictly positive and finite; f(" +
                                 std::to_string(u) + ")=" + std::to_string(values_[u]));
        }
    }
}

double Fitness::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

std::vector<Genotype> Fitness::argmax() const {
    double best = max_value();
    std::vector<Genotype> out;
    for (size_t u = 0; u < values_.size(); ++u) {
        if (values_[u] == best) out.push_back(static_cast<Genotype>(u));
    }
    return out;
}

Fitness toy_ga_fitness(int l) {
    std::vector<double> f(static_cast<size_t>(1) << l);
    for (size_t u = 0; u < f.size(); ++u) {
        f[u] = (std::popcount(static_cast<unsigned>(u)) == l / 2) ? 1.0 : 0.5;
    }
    return Fitness(std::move(f));
}

Fitness two_pow_i_squared_fitness(int l) {
    std::vector<double> f(static_cast<size_t>(1) << l);
    for (size_t u = 0; u < f.size(); ++u) {
        int i = std::popcount(static_cast<unsigned>(u));
        f[u] = std::exp2(static_cast<double>(i) * i);
    }
    return Fitness(std::move(f));
}

Fitness ones_count_fitness(int l) {
    std::vector<double> f(static_cast<size_t>(1) << l);
    for (size_t u = 0; u < f.size(); ++u) {
        f[u] = 1.0 + std::popcount(static_cast<unsigned>(u));
    }
    return Fitness(std::move(f));
}

Fitness constant_fitness(int r, double c) { return Fitness(std::vector<double>(static_cast<size_t>(r), c)); }

Population::Population(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.size() < 2) throw ParameterError("population needs at least 2 types");
    int64_t total = 0;
    for (int c : counts_) {
        if (c < 0) throw ParameterError("population counts must be nonnegative");
        total += c;
    }
    if (total < 1) throw ParameterError("population must contain at least one individual");
    n_ = static_cast<int>(total);
}

Population Population::of_copies(Genotype u, int n, int r) {
    std::vector<int> counts(static_cast<size_t>(r), 0);
    counts.at(u) = n;
    return Population(std::move(counts));
}

std::string Population::label() const {
    std::ostringstream os;
    for (size_t u = 0; u < counts_.size(); ++u) {
        if (u) os << ',';
        os << counts_[u];
    }
    return os.str();
}

TypeDistribution::TypeDistribution(std::vector<double> p) : p_(std::move(p)) {
    double total = 0.0;
    for (double x : p_) {
        if (x < 0.0 || !std::isfinite(x)) throw ParameterError("type distribution entries must be nonnegative");
        total += x;
    }
    if (std::abs(total - 1.0) > kSumTolerance) {
        throw ParameterError("type distribution sums to " + std::to_string(total) + ", expected 1");
    }
}

StateDistribution::StateDistribution(std::vector<double> pi) : pi_(std::move(pi)) {
    double total = 0.0;
    for (double x : pi_) {
        if (x < 0.0 || !std::isfinite(x)) throw ParameterError("state distribution entries must be nonnegative");
        total += x;
    }
    if (std::abs(total - 1.0) > kSumTolerance) {
        throw ParameterError("state distribution sums to " + std::to_string(total) + ", expected 1");
    }
}

TypeDistribution normalized_fitness(const Fitness& f) {
    double total = std::accumulate(f.values().begin(), f.values().end(), 0.0);
    std::vector<double> p(f.values());
    for (double& x : p) x /= total;
    // Tiny rounding drift is absorbed into the largest entry so the invariant holds.
    double sum = std::accumulate(p.begin(), p.end(), 0.0);
    *std::max_element(p.begin(), p.end()) += 1.0 - sum;
    return TypeDistribution(std::move(p));
}

TypeDistribution selection_probability(const Population& pop, const Fitness& f) {
    if (pop.r() != f.r()) throw ParameterError("population and fitness sizes differ");
    std::vector<double> p(static_cast<size_t>(pop.r()), 0.0);
    double total = 0.0;
    for (int u = 0; u < pop.r(); ++u) {
        p[static_cast<size_t>(u)] = f(static_cast<Genotype>(u)) * pop.count(static_cast<Genotype>(u));
        total += p[static_cast<size_t>(u)];
    }
    for (double& x : p) x /= total;
    double sum = std::accumulate(p.begin(), p.end(), 0.0);
    *std::max_element(p.begin(), p.end()) += 1.0 - sum;
    return TypeDistribution(std::move(p));
}

int64_t population_count(int n, int r) {
    if (n < 1) throw ParameterError("population size must be >= 1, got n=" + std::to_string(n));
    if (r < 2) throw ParameterError("type count must be >= 2, got r=" + std::to_string(r));
    // C(n+r-1, r-1) = prod_{i=1..min(n, r-1)} (m - k + i) / i with exact division.
    const int64_t k = std::min<int64_t>(n, r - 1);
    const int64_t m = static_cast<int64_t>(n) + r - 1;
    unsigned __int128 c = 1;
    for (int64_t i = 1; i <= k; ++i) {
        c *= static_cast<unsigned __int128>(m - k + i);
        c /= static_cast<unsigned __int128>(i);
        if (c > static_cast<unsigned __int128>(INT64_MAX)) {
            throw InfeasibleError("state count C(" + std::to_string(m) + "," + std::to_string(k) +
                                  ") overflows 64-bit integers");
        }
    }
    return static_cast<int64_t>(c);
}

}  // namespace evochain
