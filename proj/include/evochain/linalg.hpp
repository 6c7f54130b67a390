#ifndef EVOCHAIN_LINALG_HPP
#define EVOCHAIN_LINALG_HPP

#include <cstddef>
#include <vector>

namespace evochain {

// Dense row-major square-or-rectangular matrix of binary64 reals.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const double* row(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }
    double* row(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

  private:
    int rows_, cols_;
    std::vector<double> a_;
};

Matrix multiply(const Matrix& a, const Matrix& b);

// row vector x matrix: out_j = sum_i v_i M_ij.
std::vector<double> vec_mat(const std::vector<double>& v, const Matrix& m);

// Solves A x = b by Gaussian elimination with partial pivoting.
// Throws Error on a numerically singular pivot.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

// Eigenvalues of a symmetric matrix by the cyclic Jacobi rotation method,
// iterated until the off-diagonal Frobenius norm is <= off_tol.
// Returned sorted descending.
std::vector<double> jacobi_eigenvalues(Matrix s, double off_tol = 1e-12, int max_sweeps = 64);

}  // namespace evochain

#endif
