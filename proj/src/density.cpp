#include "evochain/density.hpp"

#include <cmath>

#include "evochain/errors.hpp"

namespace evochain {

TypeDistribution quadratic_map(const TypeDistribution& p, const LocalTransitionMatrix& b) {
    const int r = b.r();
    if (p.r() != r) throw ParameterError("distribution and tensor sizes disagree");
    std::vector<double> out(static_cast<size_t>(r), 0.0);
    for (int u = 0; u < r; ++u) {
        double pu = p[static_cast<size_t>(u)];
        if (pu == 0.0) continue;
        for (int v = 0; v < r; ++v) {
            double pv = p[static_cast<size_t>(v)];
            if (pv == 0.0) continue;
            double weight = pu * pv;
            for (int z = 0; z < r; ++z) {
                double marginal = 0.0;
                for (int w = 0; w < r; ++w) marginal += b(u, v, w, z);
                out[static_cast<size_t>(z)] += weight * marginal;
            }
        }
    }
    double total = 0.0;
    for (double x : out) total += x;
    if (std::abs(total - 1.0) > 1e-9) {
        throw ParameterError("quadratic map output sums to " + std::to_string(total) +
                             "; tensor slices are inconsistent");
    }
    // Absorb rounding drift so the distribution invariant holds exactly.
    out[0] += 1.0 - total;
    if (out[0] < 0.0) out[0] = 0.0;
    return TypeDistribution(std::move(out));
}

EquilibriumResult iterate_to_equilibrium(const TypeDistribution& p0, const LocalTransitionMatrix& b,
                                         double tol, long max_iter) {
    if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
    std::vector<std::vector<double>> trace{p0.values()};
    TypeDistribution current = p0;
    for (long step = 1; step <= max_iter; ++step) {
        TypeDistribution next = quadratic_map(current, b);
        double change = 0.0;
        for (int u = 0; u < next.r(); ++u) {
            change = std::max(change, std::abs(next[static_cast<size_t>(u)] - current[static_cast<size_t>(u)]));
        }
        trace.push_back(next.values());
        current = next;
        if (change <= tol) {
            TypeDistribution mapped = quadratic_map(current, b);
            double residual = 0.0;
            for (int u = 0; u < current.r(); ++u) {
                residual = std::max(residual,
                                    std::abs(mapped[static_cast<size_t>(u)] - current[static_cast<size_t>(u)]));
            }
            if (residual > 10.0 * tol) {
                throw ConvergenceError("iterate stalled without reaching a fixed point (residual " +
                                       std::to_string(residual) + ")",
                                       current.values(), step);
            }
            return EquilibriumResult{std::move(current), step, residual, std::move(trace)};
        }
    }
    throw ConvergenceError("no equilibrium within " + std::to_string(max_iter) + " iterations",
                           current.values(), max_iter);
}

ChernoffReport chernoff_sample_error(const TypeDistribution& p, int64_t s, double eps) {
    if (s < 1) throw ParameterError("sample size must be >= 1");
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    const int r = p.r();
    ChernoffReport rep;
    rep.alpha_prime = eps * eps * static_cast<double>(s) / 3.0;
    rep.pair_bound = 2.0 * std::exp(-rep.alpha_prime);
    rep.union_bound = 2.0 * r * r * std::exp(-rep.alpha_prime);
    rep.abs_error_bound = eps * r;
    rep.confidence = std::max(0.0, 1.0 - rep.union_bound);

    double max_pair = 0.0;
    for (int u = 0; u < r; ++u) {
        for (int v = 0; v < r; ++v) {
            max_pair = std::max(max_pair, p[static_cast<size_t>(u)] * p[static_cast<size_t>(v)]);
        }
    }
    double s_quarter = std::pow(static_cast<double>(s), 0.25);
    double s_eighth = std::pow(static_cast<double>(s), 0.125);
    if (s_quarter <= 3.0 * max_pair) {
        rep.warnings.push_back("s^(1/4) <= 3 max p(u)p(v): outside the analysed large-sample regime");
    }
    if (s_eighth < static_cast<double>(r)) {
        rep.warnings.push_back("s^(1/8) < r: error-versus-confidence simplification does not apply");
    }
    return rep;
}

double reachable_generations_estimate(int64_t n_states, int n) {
    if (n_states < 1) throw ParameterError("state count must be >= 1");
    if (n < 2) throw ParameterError("reachability estimate undefined for population size n < 2");
    return std::log(static_cast<double>(n_states)) / (4.0 * std::log(static_cast<double>(n)));
}

}  // namespace evochain
