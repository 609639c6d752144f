#pragma once

// Small dense-matrix toolkit: enough linear algebra for graphs with up to a
// few hundred nodes. Eigenvalues come from a cyclic Jacobi diagonalization,
// which keeps the whole numeric path easy to cross-check against closed-form
// oracles for small N.

#include <span>
#include <vector>

namespace mediansim {

using Vec = std::vector<double>;

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    std::span<const double> row(int i) const {
        return {data_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)};
    }

    const std::vector<double>& data() const { return data_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// Rank-one matrix a b^T.
Matrix outer(const Vec& a, const Vec& b);

Vec matvec(const Matrix& m, const Vec& x);
double dot(const Vec& a, const Vec& b);

double max_abs(const Matrix& m);
double frobenius_norm(const Matrix& m);

/// Eigenvalues of a symmetric matrix, sorted nondecreasing. Cyclic Jacobi
/// rotations until the off-diagonal Frobenius norm drops below
/// off_tol * max(1, ||m||_F). Throws NotSymmetric / NoConvergence.
Vec jacobi_eigenvalues(Matrix m, double off_tol = 1e-12, int max_sweeps = 64);

/// Operator 2-norm via the largest eigenvalue of M^T M. The input is scaled
/// by its largest entry first so that norms of very small matrices stay
/// accurate relative to themselves.
double spectral_norm(const Matrix& m);

} // namespace mediansim
