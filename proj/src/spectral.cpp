#include "evochain/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evochain/errors.hpp"
#include "evochain/linalg.hpp"

namespace evochain {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> clean_probability_vector(std::vector<double> v) {
    double total = 0.0;
    for (double& x : v) {
        if (x < 0.0) {
            if (x < -1e-12) throw Error("stationary solve produced a negative probability");
            x = 0.0;
        }
        total += x;
    }
    for (double& x : v) x /= total;
    double sum = 0.0;
    for (double x : v) sum += x;
    *std::max_element(v.begin(), v.end()) += 1.0 - sum;
    return v;
}

double linf_residual(const std::vector<double>& pi, const Matrix& q) {
    std::vector<double> next = vec_mat(pi, q);
    double res = 0.0;
    for (size_t i = 0; i < pi.size(); ++i) res = std::max(res, std::abs(next[i] - pi[i]));
    return res;
}

double delta_from_power(const Matrix& p_t, const std::vector<double>& pi, const std::vector<int>& subset) {
    double worst = 0.0;
    if (subset.empty()) {
        const int n = p_t.rows();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                worst = std::max(worst, std::abs(p_t(i, j) - pi[static_cast<size_t>(j)]) / pi[static_cast<size_t>(j)]);
            }
        }
    } else {
        for (int i : subset) {
            for (int j : subset) {
                worst = std::max(worst, std::abs(p_t(i, j) - pi[static_cast<size_t>(j)]) / pi[static_cast<size_t>(j)]);
            }
        }
    }
    return worst;
}

Matrix matrix_power(const Matrix& q, long t) {
    Matrix result = Matrix::identity(q.rows());
    Matrix base = q;
    while (t > 0) {
        if (t & 1) result = multiply(result, base);
        t >>= 1;
        if (t > 0) base = multiply(base, base);
    }
    return result;
}

}  // namespace

StateDistribution stationary_distribution(const MarkovChain& chain, StationaryMethod method, double tol) {
    require_ergodic(chain);
    const Matrix& q = chain.q();
    const int n = chain.size();

    if (method == StationaryMethod::PowerIteration) {
        std::vector<double> pi(static_cast<size_t>(n), 1.0 / n);
        const long cap = 10'000'000;
        for (long iter = 0; iter < cap; ++iter) {
            std::vector<double> next = vec_mat(pi, q);
            double total = 0.0;
            for (double x : next) total += x;
            for (double& x : next) x /= total;
            double change = 0.0;
            for (int i = 0; i < n; ++i) {
                change = std::max(change, std::abs(next[static_cast<size_t>(i)] - pi[static_cast<size_t>(i)]));
            }
            pi = std::move(next);
            if (change <= tol) {
                return StateDistribution(clean_probability_vector(std::move(pi)));
            }
        }
        throw ConvergenceError("power iteration did not reach tolerance", pi, cap);
    }

    // DirectSolve: rows of (Q^T - I), one row swapped for normalization.
    auto solve_with_row = [&](int norm_row) {
        Matrix a(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) a(i, j) = q(j, i) - (i == j ? 1.0 : 0.0);
        }
        std::vector<double> b(static_cast<size_t>(n), 0.0);
        for (int j = 0; j < n; ++j) a(norm_row, j) = 1.0;
        b[static_cast<size_t>(norm_row)] = 1.0;
        return solve_linear(std::move(a), std::move(b));
    };
    std::vector<double> pi;
    try {
        pi = solve_with_row(n - 1);
    } catch (const Error&) {
        pi = solve_with_row(0);
    }
    pi = clean_probability_vector(std::move(pi));
    double residual = linf_residual(pi, q);
    if (residual > std::max(tol, 1e-10)) {
        throw Error("stationary solve residual " + std::to_string(residual) + " exceeds tolerance");
    }
    return StateDistribution(std::move(pi));
}

ReversibilityCheck check_reversibility(const MarkovChain& chain, const StateDistribution& pi, double tol) {
    const Matrix& q = chain.q();
    double worst = 0.0;
    for (int i = 0; i < chain.size(); ++i) {
        for (int j = i + 1; j < chain.size(); ++j) {
            worst = std::max(worst, std::abs(pi[static_cast<size_t>(i)] * q(i, j) -
                                             pi[static_cast<size_t>(j)] * q(j, i)));
        }
    }
    return ReversibilityCheck{worst <= tol, worst};
}

SpectralSummary symmetrized_spectrum(const MarkovChain& chain, const StateDistribution& pi,
                                     double reversibility_tol) {
    ReversibilityCheck rev = check_reversibility(chain, pi, reversibility_tol);
    if (!rev.reversible) {
        throw Error("chain is not reversible (max detailed-balance violation " +
                    std::to_string(rev.max_violation) + "); use lambda_max_estimate's approximate path");
    }
    const int n = chain.size();
    Matrix s(n, n);
    for (int i = 0; i < n; ++i) {
        double root_i = std::sqrt(pi[static_cast<size_t>(i)]);
        for (int j = 0; j < n; ++j) {
            s(i, j) = root_i * chain.q()(i, j) / std::sqrt(pi[static_cast<size_t>(j)]);
        }
    }
    // Detailed balance makes s symmetric up to roundoff; enforce it exactly.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double avg = 0.5 * (s(i, j) + s(j, i));
            s(i, j) = avg;
            s(j, i) = avg;
        }
    }
    SpectralSummary summary;
    summary.eigenvalues = jacobi_eigenvalues(std::move(s));
    if (std::abs(summary.eigenvalues.front() - 1.0) > 1e-9) {
        throw Error("leading eigenvalue " + std::to_string(summary.eigenvalues.front()) +
                    " differs from 1; chain is not a valid ergodic stochastic matrix");
    }
    summary.lambda_1 = summary.eigenvalues[1];
    summary.lambda_min = summary.eigenvalues.back();
    summary.lambda_max = std::max(std::abs(summary.lambda_1), std::abs(summary.lambda_min));
    summary.reversible = true;
    summary.method = SpectralSummary::Method::ExactSymmetrized;
    return summary;
}

LambdaMaxEstimate lambda_max_estimate(const MarkovChain& chain) {
    StateDistribution pi = stationary_distribution(chain);
    ReversibilityCheck rev = check_reversibility(chain, pi, 1e-10);
    if (rev.reversible) {
        SpectralSummary summary = symmetrized_spectrum(chain, pi);
        return LambdaMaxEstimate{summary.lambda_max, SpectralSummary::Method::ExactSymmetrized};
    }
    // Fit the geometric decay rate of Delta(t) over a window below 1e-2.
    Matrix power = Matrix::identity(chain.size());
    std::vector<std::pair<long, double>> window;
    for (long t = 1; t <= 5000; ++t) {
        power = multiply(power, chain.q());
        double delta = delta_from_power(power, pi.values(), {});
        if (delta < 1e-2) window.push_back({t, std::log(delta)});
        if (delta < 1e-9 || window.size() >= 40) break;
    }
    if (window.size() < 3) {
        throw ConvergenceError("r.p.d. decay window too short to fit a rate", pi.values(),
                               static_cast<long>(window.size()));
    }
    double mean_t = 0.0, mean_y = 0.0;
    for (auto [t, y] : window) {
        mean_t += static_cast<double>(t);
        mean_y += y;
    }
    mean_t /= static_cast<double>(window.size());
    mean_y /= static_cast<double>(window.size());
    double num = 0.0, den = 0.0;
    for (auto [t, y] : window) {
        num += (static_cast<double>(t) - mean_t) * (y - mean_y);
        den += (static_cast<double>(t) - mean_t) * (static_cast<double>(t) - mean_t);
    }
    return LambdaMaxEstimate{std::exp(num / den), SpectralSummary::Method::PowerIterationApprox};
}

double rpd(const MarkovChain& chain, const StateDistribution& pi, long t, const std::vector<int>& subset) {
    if (t < 0) throw ParameterError("r.p.d. needs t >= 0");
    for (int i : subset) {
        if (i < 0 || i >= chain.size()) throw ParameterError("r.p.d. subset index out of range");
    }
    Matrix p_t = matrix_power(chain.q(), t);
    return delta_from_power(p_t, pi.values(), subset);
}

std::vector<double> rpd_table(const MarkovChain& chain, const StateDistribution& pi, int t_max) {
    std::vector<double> table;
    table.reserve(static_cast<size_t>(t_max) + 1);
    Matrix power = Matrix::identity(chain.size());
    table.push_back(delta_from_power(power, pi.values(), {}));
    for (int t = 1; t <= t_max; ++t) {
        power = multiply(power, chain.q());
        table.push_back(delta_from_power(power, pi.values(), {}));
    }
    return table;
}

MixingReport mixing_time(const MarkovChain& chain, double eps, int scan_cap) {
    if (!(eps > 0.0) || eps > 1.0) throw ParameterError("mixing time needs eps in (0, 1]");
    StateDistribution pi = stationary_distribution(chain);
    double pi_min = *std::min_element(pi.values().begin(), pi.values().end());
    ReversibilityCheck rev = check_reversibility(chain, pi, 1e-10);

    MixingReport report;
    report.eps = eps;
    report.reversible = rev.reversible;
    report.pi_min = pi_min;
    report.lambda_max = kNaN;
    report.tau = -1;
    report.conclusive = false;

    int scan_end;
    if (rev.reversible) {
        SpectralSummary summary = symmetrized_spectrum(chain, pi);
        report.lambda_max = summary.lambda_max;
        if (summary.lambda_max < 1e-14) {
            scan_end = 1;
        } else {
            // First t with lambda_max^t / pi_min <= eps; Lemma 1 certifies all later t.
            scan_end = static_cast<int>(std::ceil(std::log(eps * pi_min) / std::log(summary.lambda_max)));
            scan_end = std::max(scan_end, 1);
        }
        if (scan_end > scan_cap) {
            scan_end = scan_cap;
        } else {
            report.conclusive = true;
        }
    } else {
        scan_end = scan_cap;
    }

    std::vector<double> deltas;
    deltas.reserve(static_cast<size_t>(scan_end) + 1);
    Matrix power = Matrix::identity(chain.size());
    deltas.push_back(delta_from_power(power, pi.values(), {}));
    int stop_early = -1;
    for (int t = 1; t <= scan_end; ++t) {
        power = multiply(power, chain.q());
        deltas.push_back(delta_from_power(power, pi.values(), {}));
        // Inconclusive scans stop once the r.p.d. has fallen well below eps.
        if (!report.conclusive && deltas.back() <= eps * 1e-3) {
            stop_early = t;
            break;
        }
    }
    if (stop_early > 0) scan_end = stop_early;

    // tau = first t from which Delta stays <= eps through the scanned range.
    int tau = -1;
    for (int t = scan_end; t >= 0; --t) {
        if (deltas[static_cast<size_t>(t)] <= eps) {
            tau = t;
        } else {
            break;
        }
    }
    report.tau = tau;
    if (tau < 0) report.conclusive = false;

    report.table.reserve(deltas.size());
    for (size_t t = 0; t < deltas.size(); ++t) {
        MixingRow row;
        row.t = static_cast<int>(t);
        row.delta = deltas[t];
        if (rev.reversible) {
            row.lemma2_lower = std::pow(report.lambda_max, static_cast<double>(t));
            row.lemma1_upper = row.lemma2_lower / pi_min;
        } else {
            row.lemma2_lower = kNaN;
            row.lemma1_upper = kNaN;
        }
        report.table.push_back(row);
    }
    return report;
}

SandwichReport verify_spectral_sandwich(const MarkovChain& chain, int t_max) {
    StateDistribution pi = stationary_distribution(chain);
    SpectralSummary summary = symmetrized_spectrum(chain, pi);  // throws if non-reversible
    double pi_min = *std::min_element(pi.values().begin(), pi.values().end());

    SandwichReport report;
    report.lambda_max = summary.lambda_max;
    report.pi_min = pi_min;
    report.nonneg_spectrum = summary.lambda_min >= -1e-12;
    report.all_pass = true;

    constexpr double kSlack = 1e-9;
    Matrix power = Matrix::identity(chain.size());
    for (int t = 1; t <= t_max; ++t) {
        power = multiply(power, chain.q());
        SandwichRow row;
        row.t = t;
        row.delta = delta_from_power(power, pi.values(), {});
        row.lower = std::pow(report.lambda_max, static_cast<double>(t));
        row.upper = row.lower / pi_min;
        row.lower_binding = (t % 2 == 0) || report.nonneg_spectrum;
        bool upper_ok = row.delta <= row.upper + kSlack;
        bool lower_ok = !row.lower_binding || row.delta >= row.lower - kSlack;
        row.pass = upper_ok && lower_ok;
        if (!row.pass) report.all_pass = false;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace evochain
