#include "mediansim/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "mediansim/error.hpp"

namespace mediansim {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int l = 0; l < a.cols(); ++l) {
            const double ail = a(i, l);
            if (ail == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
        }
    }
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

Matrix outer(const Vec& a, const Vec& b) {
    Matrix c(static_cast<int>(a.size()), static_cast<int>(b.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c(static_cast<int>(i), static_cast<int>(j)) = a[i] * b[j];
    return c;
}

Vec matvec(const Matrix& m, const Vec& x) {
    if (m.cols() != static_cast<int>(x.size()))
        fail(ErrorCode::DimensionMismatch, "matvec shape mismatch");
    Vec y(m.rows(), 0.0);
    for (int i = 0; i < m.rows(); ++i) {
        double acc = 0.0;
        for (int j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

double dot(const Vec& a, const Vec& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double max_abs(const Matrix& m) {
    double v = 0.0;
    for (double x : m.data()) v = std::max(v, std::abs(x));
    return v;
}

double frobenius_norm(const Matrix& m) {
    double acc = 0.0;
    for (double x : m.data()) acc += x * x;
    return std::sqrt(acc);
}

namespace {

double off_diagonal_norm(const Matrix& m) {
    double acc = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j) acc += m(i, j) * m(i, j);
    return std::sqrt(acc);
}

} // namespace

Vec jacobi_eigenvalues(Matrix m, double off_tol, int max_sweeps) {
    const int n = m.rows();
    if (n != m.cols()) fail(ErrorCode::NotSymmetric, "jacobi_eigenvalues: matrix not square");
    if (n == 0) return {};

    double asym = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
    if (asym > 1e-10)
        fail(ErrorCode::NotSymmetric, "jacobi_eigenvalues: asymmetry " + std::to_string(asym));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = m(j, i) = v;
        }

    const double stop = off_tol * std::max(1.0, frobenius_norm(m));
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(m) <= stop) {
            Vec eigs(n);
            for (int i = 0; i < n; ++i) eigs[i] = m(i, i);
            std::sort(eigs.begin(), eigs.end());
            return eigs;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int l = 0; l < n; ++l) {
                    const double mlp = m(l, p);
                    const double mlq = m(l, q);
                    m(l, p) = c * mlp - s * mlq;
                    m(l, q) = s * mlp + c * mlq;
                }
                for (int l = 0; l < n; ++l) {
                    const double mpl = m(p, l);
                    const double mql = m(q, l);
                    m(p, l) = c * mpl - s * mql;
                    m(q, l) = s * mpl + c * mql;
                }
            }
        }
    }
    if (off_diagonal_norm(m) <= stop) {
        Vec eigs(n);
        for (int i = 0; i < n; ++i) eigs[i] = m(i, i);
        std::sort(eigs.begin(), eigs.end());
        return eigs;
    }
    fail(ErrorCode::NoConvergence, "jacobi_eigenvalues: off-diagonal norm still above tolerance");
}

double spectral_norm(const Matrix& m) {
    const double scale = max_abs(m);
    if (scale == 0.0) return 0.0;
    Matrix s(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s(i, j) = m(i, j) / scale;
    // Gram matrix of the scaled input; symmetric by construction.
    Matrix g(s.cols(), s.cols());
    for (int i = 0; i < s.cols(); ++i) {
        for (int j = i; j < s.cols(); ++j) {
            double acc = 0.0;
            for (int l = 0; l < s.rows(); ++l) acc += s(l, i) * s(l, j);
            g(i, j) = g(j, i) = acc;
        }
    }
    const Vec eigs = jacobi_eigenvalues(std::move(g));
    const double top = std::max(0.0, eigs.back());
    return std::sqrt(top) * scale;
}

} // namespace mediansim
