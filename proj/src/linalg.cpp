#include "evochain/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "evochain/errors.hpp"

namespace evochain {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix shape mismatch in multiply");
    Matrix out(a.rows(), b.cols());
    // i-k-j order keeps the inner loop contiguous.
    for (int i = 0; i < a.rows(); ++i) {
        double* out_row = out.row(i);
        for (int k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* b_row = b.row(k);
            for (int j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
        }
    }
    return out;
}

std::vector<double> vec_mat(const std::vector<double>& v, const Matrix& m) {
    if (static_cast<int>(v.size()) != m.rows()) throw Error("shape mismatch in vec_mat");
    std::vector<double> out(static_cast<size_t>(m.cols()), 0.0);
    for (int i = 0; i < m.rows(); ++i) {
        double vi = v[static_cast<size_t>(i)];
        if (vi == 0.0) continue;
        const double* row = m.row(i);
        for (int j = 0; j < m.cols(); ++j) out[static_cast<size_t>(j)] += vi * row[j];
    }
    return out;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    const int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n) throw Error("solve_linear needs square system");
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int i = col + 1; i < n; ++i) {
            if (std::abs(a(i, col)) > std::abs(a(pivot, col))) pivot = i;
        }
        if (std::abs(a(pivot, col)) < 1e-300) throw Error("singular linear system");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(pivot)]);
        }
        double inv = 1.0 / a(col, col);
        for (int i = col + 1; i < n; ++i) {
            double factor = a(i, col) * inv;
            if (factor == 0.0) continue;
            a(i, col) = 0.0;
            for (int j = col + 1; j < n; ++j) a(i, j) -= factor * a(col, j);
            b[static_cast<size_t>(i)] -= factor * b[static_cast<size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double acc = b[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j) acc -= a(i, j) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] = acc / a(i, i);
    }
    return x;
}

namespace {

double off_diagonal_norm(const Matrix& s) {
    double acc = 0.0;
    for (int i = 0; i < s.rows(); ++i) {
        for (int j = 0; j < s.cols(); ++j) {
            if (i != j) acc += s(i, j) * s(i, j);
        }
    }
    return std::sqrt(acc);
}

}  // namespace

std::vector<double> jacobi_eigenvalues(Matrix s, double off_tol, int max_sweeps) {
    const int n = s.rows();
    if (s.cols() != n) throw Error("jacobi_eigenvalues needs a square matrix");
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(s) <= off_tol) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = s(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * c;
                // Rotate rows/columns p and q.
                for (int k = 0; k < n; ++k) {
                    double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (int k = 0; k < n; ++k) {
                    double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
            }
        }
    }
    if (off_diagonal_norm(s) > off_tol * 10.0 + 1e-9) {
        throw ConvergenceError("jacobi rotations did not reach target off-diagonal norm",
                               std::vector<double>{off_diagonal_norm(s)}, max_sweeps);
    }
    std::vector<double> eig(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<size_t>(i)] = s(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

}  // namespace evochain
