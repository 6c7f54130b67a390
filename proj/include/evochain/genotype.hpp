#ifndef EVOCHAIN_GENOTYPE_HPP
#define EVOCHAIN_GENOTYPE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace evochain {

using Genotype = uint32_t;  // bitstring value; index into the type space

// The universe of individual types: either r abstract indices or the
// bitstrings of a fixed length l (r = 2^l). Immutable after construction.
class TypeSpace {
  public:
    static TypeSpace abstract(int r);
    static TypeSpace bitstring(int l);

    int r() const { return r_; }
    bool is_bitstring() const { return bits_.has_value(); }
    int bits() const;  // throws if abstract

    // Display form of a type: bitstrings MSB-first, abstract types as digits.
    std::string type_label(Genotype u) const;

  private:
    TypeSpace(int r, std::optional<int> bits) : r_(r), bits_(bits) {}
    int r_;
    std::optional<int> bits_;
};

// Strictly positive per-type fitness values.
class Fitness {
  public:
    explicit Fitness(std::vector<double> values);

    int r() const { return static_cast<int>(values_.size()); }
    double operator()(Genotype u) const { return values_[u]; }
    const std::vector<double>& values() const { return values_; }

    double max_value() const;
    // Types achieving the maximum fitness.
    std::vector<Genotype> argmax() const;

  private:
    std::vector<double> values_;
};

// Builtin fitness tables over bitstrings of length l.
Fitness toy_ga_fitness(int l);           // 1 if popcount == l/2, else 1/2
Fitness two_pow_i_squared_fitness(int l);  // 2^(popcount^2)
Fitness ones_count_fitness(int l);         // popcount + 1 (kept positive)
Fitness constant_fitness(int r, double c = 1.0);

// A size-n multiset over the type space, stored as a count vector.
class Population {
  public:
    explicit Population(std::vector<int> counts);
    static Population of_copies(Genotype u, int n, int r);

    int r() const { return static_cast<int>(counts_.size()); }
    int n() const { return n_; }
    int count(Genotype u) const { return counts_[u]; }
    const std::vector<int>& counts() const { return counts_; }

    bool contains(Genotype u) const { return counts_[u] > 0; }
    bool operator==(const Population& other) const { return counts_ == other.counts_; }

    std::string label() const;  // "2,0,0" style

  private:
    std::vector<int> counts_;
    int n_;
};

struct PopulationHash {
    size_t operator()(const Population& p) const {
        size_t h = 0xcbf29ce484222325ULL;
        for (int c : p.counts()) {
            h ^= static_cast<size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Probability distribution over the r types.
class TypeDistribution {
  public:
    explicit TypeDistribution(std::vector<double> p);

    int r() const { return static_cast<int>(p_.size()); }
    double operator[](size_t u) const { return p_[u]; }
    const std::vector<double>& values() const { return p_; }

  private:
    std::vector<double> p_;
};

// Probability distribution over the N chain states.
class StateDistribution {
  public:
    explicit StateDistribution(std::vector<double> pi);

    size_t size() const { return pi_.size(); }
    double operator[](size_t i) const { return pi_[i]; }
    const std::vector<double>& values() const { return pi_; }

  private:
    std::vector<double> pi_;
};

// f_hat(u) = f(u) / sum_v f(v).
TypeDistribution normalized_fitness(const Fitness& f);

// Fitness-proportional selection: p(u) = f(u) P(u) / sum_v f(v) P(v).
TypeDistribution selection_probability(const Population& pop, const Fitness& f);

// Number of size-n populations over r types: C(n+r-1, r-1), exact.
// Throws InfeasibleError if the count does not fit in int64.
int64_t population_count(int n, int r);

}  // namespace evochain

#endif
