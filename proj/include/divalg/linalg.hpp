#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "divalg/matrix.hpp"
#include "divalg/polynomial.hpp"
#include "divalg/tolerance.hpp"

namespace divalg {

namespace detail {

/// Reduced row echelon form with partial pivoting (ties break toward the
/// largest absolute value, then the smallest row index).  Pivots below
/// pivot_tol count as zero.  Returns the pivot column list.
inline std::vector<int> rref(Matrix& M, double pivot_tol) {
    std::vector<int> pivot_cols;
    int row = 0;
    for (int col = 0; col < M.cols && row < M.rows; ++col) {
        int best = -1;
        double best_abs = pivot_tol;
        for (int r = row; r < M.rows; ++r) {
            const double v = std::fabs(M.at(r, col));
            if (v > best_abs) {
                best_abs = v;
                best = r;
            }
        }
        if (best < 0) continue;
        if (best != row)
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(row, j), M.at(best, j));
        const double piv = M.at(row, col);
        for (int j = 0; j < M.cols; ++j) M.at(row, j) /= piv;
        M.at(row, col) = 1.0;
        for (int r = 0; r < M.rows; ++r) {
            if (r == row) continue;
            const double f = M.at(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < M.cols; ++j) M.at(r, j) -= f * M.at(row, j);
            M.at(r, col) = 0.0;
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

inline double pivot_tolerance(const Matrix& M, const Tolerance& tol) {
    return tol.eps * (1.0 + M.max_abs());
}

}  // namespace detail

/// Numerical rank via row-echelon elimination; a pivot below
/// eps*(1+max|M|) counts as zero.
inline int numerical_rank(const Matrix& M, const Tolerance& tol = Tolerance()) {
    Matrix work = M;
    return int(detail::rref(work, detail::pivot_tolerance(M, tol)).size());
}

/// Orthonormal basis of the kernel of M.  Vectors are unit, mutually
/// orthogonal, and satisfy ||M v|| <= tol.eps * (1 + max|M|); the count is
/// cols - rank(M).  Empty for a trivial kernel.
inline std::vector<Vec> kernel_basis(const Matrix& M, const Tolerance& tol = Tolerance()) {
    Matrix R = M;
    const std::vector<int> pivots = detail::rref(R, detail::pivot_tolerance(M, tol));
    std::vector<bool> is_pivot(M.cols, false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<Vec> basis;
    for (int freec = 0; freec < M.cols; ++freec) {
        if (is_pivot[freec]) continue;
        Vec v(M.cols, 0.0);
        v[freec] = 1.0;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -R.at(int(r), freec);
        // Modified Gram-Schmidt against the vectors already collected.
        for (const Vec& b : basis) axpy(v, -dot(v, b), b);
        for (const Vec& b : basis) axpy(v, -dot(v, b), b);
        const double n = norm(v);
        if (n > 0.0) basis.push_back(scale(v, 1.0 / n));
    }
    return basis;
}

/// Least-squares solve of M x = b via the normal equations with iterative
/// refinement.  Returns the solution when the residual meets
/// ||M x - b|| <= tol.eps * (1 + ||b||); otherwise nullopt (no solution).
/// The elimination pivot floor sits near machine precision: the final
/// residual check, not the rank tolerance, decides solvability here.
inline std::optional<Vec> solve_linear(const Matrix& M, const Vec& b, const Tolerance& tol = Tolerance()) {
    if (int(b.size()) != M.rows) throw DimensionMismatch("solve_linear: rhs size mismatch");
    const Matrix Mt = transpose(M);
    const Matrix N = Mt * M;
    const double piv_tol = 1e-13 * (1.0 + N.max_abs());

    auto lsq = [&](const Vec& rhs) -> Vec {
        Matrix aug(N.rows, N.cols + 1);
        for (int i = 0; i < N.rows; ++i) {
            for (int j = 0; j < N.cols; ++j) aug.at(i, j) = N.at(i, j);
            aug.at(i, N.cols) = rhs[i];
        }
        std::vector<int> pivots = detail::rref(aug, piv_tol);
        Vec x(M.cols, 0.0);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (pivots[r] >= M.cols) continue;  // inconsistent normal system: rank-truncated
            x[pivots[r]] = aug.at(int(r), N.cols);
        }
        return x;
    };

    Vec x = lsq(matvec(Mt, b));
    for (int round = 0; round < 3; ++round) {
        Vec r = sub(b, matvec(M, x));
        Vec dx = lsq(matvec(Mt, r));
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
    }
    const double resid = norm(sub(matvec(M, x), b));
    if (resid <= tol.eps * (1.0 + norm(b))) return x;
    return std::nullopt;
}

struct SingularBasis : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Inverse via Gauss-Jordan; throws SingularBasis when rank-deficient.
inline Matrix invert(const Matrix& M, const Tolerance& tol = Tolerance()) {
    if (M.rows != M.cols) throw DimensionMismatch("invert: matrix not square");
    const int n = M.rows;
    Matrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = M.at(i, j);
        aug.at(i, n + i) = 1.0;
    }
    std::vector<int> pivots = detail::rref(aug, detail::pivot_tolerance(M, tol));
    if (int(pivots.size()) < n || pivots[n - 1] >= n)
        throw SingularBasis("invert: matrix is numerically singular");
    Matrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

/// Monic characteristic polynomial det(XI - M) by the Faddeev-LeVerrier
/// recurrence.
inline RealPolynomial characteristic_polynomial(const Matrix& M) {
    if (M.rows != M.cols) throw DimensionMismatch("characteristic_polynomial: matrix not square");
    const int n = M.rows;
    std::vector<double> coeffs(n + 1, 0.0);
    coeffs[n] = 1.0;
    Matrix Mk = M;
    for (int k = 1; k <= n; ++k) {
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += Mk.at(i, i);
        const double ck = -tr / double(k);
        coeffs[n - k] = ck;
        if (k == n) break;
        Matrix shifted = Mk;
        for (int i = 0; i < n; ++i) shifted.at(i, i) += ck;
        Mk = M * shifted;
    }
    return RealPolynomial(std::move(coeffs));
}

namespace detail {

/// Inverse iteration for the eigenvector of an (almost) known eigenvalue:
/// LU of (M - lambda I) with tiny pivots clamped, then a few solves from a
/// fixed all-ones start.
inline std::optional<Vec> inverse_iteration(const Matrix& M, double lambda, const Tolerance& tol) {
    const int n = M.rows;
    Matrix A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A.at(i, j) = M.at(i, j) - (i == j ? lambda : 0.0);
    const double tiny = 1e-14 * (1.0 + M.max_abs());

    // LU with partial pivoting, clamping zero pivots.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Matrix LU = A;
    for (int k = 0; k < n; ++k) {
        int best = k;
        for (int r = k + 1; r < n; ++r)
            if (std::fabs(LU.at(r, k)) > std::fabs(LU.at(best, k))) best = r;
        if (best != k) {
            for (int j = 0; j < n; ++j) std::swap(LU.at(k, j), LU.at(best, j));
            std::swap(perm[k], perm[best]);
        }
        if (std::fabs(LU.at(k, k)) < tiny) LU.at(k, k) = (LU.at(k, k) < 0.0 ? -tiny : tiny);
        for (int r = k + 1; r < n; ++r) {
            const double f = LU.at(r, k) / LU.at(k, k);
            LU.at(r, k) = f;
            for (int j = k + 1; j < n; ++j) LU.at(r, j) -= f * LU.at(k, j);
        }
    }
    auto lu_solve = [&](const Vec& rhs) {
        Vec y(n);
        for (int i = 0; i < n; ++i) {
            double s = rhs[perm[i]];
            for (int j = 0; j < i; ++j) s -= LU.at(i, j) * y[j];
            y[i] = s;
        }
        Vec x(n);
        for (int i = n - 1; i >= 0; --i) {
            double s = y[i];
            for (int j = i + 1; j < n; ++j) s -= LU.at(i, j) * x[j];
            x[i] = s / LU.at(i, i);
        }
        return x;
    };

    Vec v(n, 1.0);
    v = scale(v, 1.0 / norm(v));
    for (int it = 0; it < 4; ++it) {
        Vec w = lu_solve(v);
        const double nw = norm(w);
        if (!(nw > 0.0) || !finite(w)) return std::nullopt;
        v = scale(w, 1.0 / nw);
    }
    const double resid = norm(sub(matvec(M, v), scale(v, lambda)));
    if (resid <= tol.eps * (1.0 + M.max_abs())) return v;
    return std::nullopt;
}

}  // namespace detail

/// Real eigenpairs of a square matrix: eigenvalues are the real roots of the
/// characteristic polynomial (ascending), eigenvectors extracted as
/// kernel_basis(M - lambda I) with inverse iteration as fallback.  Each pair
/// satisfies ||M v - lambda v|| <= tol.eps * (1 + max|M|), ||v|| = 1; for odd
/// dimension the list is nonempty.
inline std::vector<std::pair<double, Vec>> real_eigenpairs(const Matrix& M, const Tolerance& tol = Tolerance()) {
    if (M.rows != M.cols) throw DimensionMismatch("real_eigenpairs: matrix not square");
    const int n = M.rows;
    const RealPolynomial chi = characteristic_polynomial(M);
    // The characteristic polynomial's own residual scale grows with the
    // matrix, so accept roots generously and let the eigen residual decide.
    Tolerance root_tol(std::min(0.5, std::sqrt(tol.eps)), tol.rel);
    std::vector<double> lambdas = real_roots(chi, root_tol);

    const double resid_tol = tol.eps * (1.0 + M.max_abs());
    std::vector<std::pair<double, Vec>> pairs;
    for (double lambda : lambdas) {
        Matrix A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A.at(i, j) = M.at(i, j) - (i == j ? lambda : 0.0);
        bool found = false;
        for (const Vec& v : kernel_basis(A, tol)) {
            if (norm(sub(matvec(M, v), scale(v, lambda))) <= resid_tol) {
                pairs.emplace_back(lambda, v);
                found = true;
            }
        }
        if (!found) {
            if (auto v = detail::inverse_iteration(M, lambda, tol)) pairs.emplace_back(lambda, *v);
        }
    }
    return pairs;
}

/// Gram-matrix inner product of coordinate vectors.
inline double gram_dot(const Matrix& gram, const Vec& x, const Vec& y) {
    return dot(x, matvec(gram, y));
}

/// A unit vector (in the inner product whose Gram matrix on the coordinate
/// basis is `gram`) orthogonal to every vector in U.  Candidates are the
/// standard basis vectors in index order; the one with the largest residual
/// after projection wins, which keeps the choice deterministic.  Returns
/// nullopt when U already spans the space.
inline std::optional<Vec> orthonormal_complement_unit(const std::vector<Vec>& U, const Matrix& gram, int dim,
                                                      const Tolerance& tol = Tolerance()) {
    if (gram.rows != dim || gram.cols != dim) throw DimensionMismatch("orthonormal_complement_unit: gram size");
    // Orthonormalize U in the gram inner product, dropping dependent vectors.
    std::vector<Vec> onb;
    for (const Vec& u : U) {
        Vec w = u;
        for (const Vec& b : onb) axpy(w, -gram_dot(gram, w, b), b);
        for (const Vec& b : onb) axpy(w, -gram_dot(gram, w, b), b);
        const double n2 = gram_dot(gram, w, w);
        if (n2 > tol.eps * (1.0 + gram_dot(gram, u, u))) onb.push_back(scale(w, 1.0 / std::sqrt(n2)));
    }
    if (int(onb.size()) >= dim) return std::nullopt;

    Vec best;
    double best_n2 = 0.0;
    for (int i = 0; i < dim; ++i) {
        Vec w = unit_vec(dim, i);
        for (const Vec& b : onb) axpy(w, -gram_dot(gram, w, b), b);
        for (const Vec& b : onb) axpy(w, -gram_dot(gram, w, b), b);
        const double n2 = gram_dot(gram, w, w);
        if (n2 > best_n2) {
            best_n2 = n2;
            best = w;
        }
    }
    if (!(best_n2 > tol.eps)) return std::nullopt;
    return scale(best, 1.0 / std::sqrt(best_n2));
}

}  // namespace divalg
