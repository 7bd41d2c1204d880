#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace divalg {

/// Coordinate vector.  All element and eigenvector coordinates in the
/// library are plain double vectors.
using Vec = std::vector<double>;

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major real matrix for small dimensions.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), a(std::size_t(r) * std::size_t(c), fill) {
        if (r <= 0 || c <= 0) throw std::invalid_argument("Matrix: dimensions must be positive");
    }

    double& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
    double at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    bool finite() const {
        for (double x : a)
            if (!std::isfinite(x)) return false;
        return true;
    }

    /// Largest absolute entry; the scale used by rank and residual thresholds.
    double max_abs() const {
        double m = 0.0;
        for (double x : a) m = std::max(m, std::fabs(x));
        return m;
    }
};

inline Matrix operator*(const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw DimensionMismatch("Matrix product: inner dimensions differ");
    Matrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const double aik = A.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

inline Vec matvec(const Matrix& A, const Vec& x) {
    if (int(x.size()) != A.cols) throw DimensionMismatch("matvec: size mismatch");
    Vec y(A.rows, 0.0);
    for (int i = 0; i < A.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < A.cols; ++j) s += A.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline Matrix transpose(const Matrix& A) {
    Matrix T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

// ---- small vector helpers -------------------------------------------------

inline double dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatch("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

inline double max_abs(const Vec& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

inline Vec add(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatch("add: size mismatch");
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return z;
}

inline Vec sub(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatch("sub: size mismatch");
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return z;
}

inline Vec scale(const Vec& x, double s) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = s * x[i];
    return z;
}

/// y += s*x
inline void axpy(Vec& y, double s, const Vec& x) {
    if (x.size() != y.size()) throw DimensionMismatch("axpy: size mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

inline Vec unit_vec(int dim, int index) {
    Vec e(dim, 0.0);
    e[index] = 1.0;
    return e;
}

inline bool finite(const Vec& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace divalg
