#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divalg/linalg.hpp"
#include "divalg/matrix.hpp"
#include "divalg/polynomial.hpp"
#include "divalg/tolerance.hpp"

namespace divalg {

/// Element coordinates over a fixed tensor's basis.
using Element = Vec;

struct NoUnityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Where a tensor came from: generator name, seed, and the basis change that
/// produced it, when any.
struct Provenance {
    std::string generator;
    std::optional<std::uint64_t> seed;
    std::optional<Matrix> basis_change;
    std::string note;
};

/// Soft cap on tensor dimension, purely for resource safety.
inline constexpr int kMaxTensorDim = 64;

/// Structure-constant tensor of a finite-dimensional real algebra:
/// e_i * e_j = sum_k c[i][j][k] e_k.  The tensor is the sole definition of
/// the multiplication.
class StructureTensor {
  public:
    StructureTensor(int dim, std::vector<double> constants, std::vector<std::string> basis_names = {},
                    std::optional<int> unity_index = std::nullopt)
        : dim_(dim), c_(std::move(constants)), names_(std::move(basis_names)), unity_index_(unity_index) {
        if (dim_ < 1 || dim_ > kMaxTensorDim) throw std::invalid_argument("StructureTensor: dim out of range");
        if (c_.size() != std::size_t(dim_) * dim_ * dim_)
            throw std::invalid_argument("StructureTensor: constants must have dim^3 entries");
        for (double v : c_)
            if (!std::isfinite(v)) throw std::invalid_argument("StructureTensor: non-finite constant");
        if (names_.empty()) {
            names_.reserve(dim_);
            for (int i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i));
        }
        if (int(names_.size()) != dim_) throw std::invalid_argument("StructureTensor: basis_names size mismatch");
        if (unity_index_) {
            const int u = *unity_index_;
            if (u < 0 || u >= dim_) throw std::invalid_argument("StructureTensor: unity_index out of range");
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k) {
                    const double want = (j == k) ? 1.0 : 0.0;
                    if (c(u, j, k) != want || c(j, u, k) != want)
                        throw std::invalid_argument("StructureTensor: unity_index slices must be exact deltas");
                }
        }
        max_abs_ = 0.0;
        for (double v : c_) max_abs_ = std::max(max_abs_, std::fabs(v));
    }

    int dim() const { return dim_; }
    double c(int i, int j, int k) const { return c_[(std::size_t(i) * dim_ + j) * dim_ + k]; }
    const std::vector<double>& constants() const { return c_; }
    const std::vector<std::string>& basis_names() const { return names_; }
    std::optional<int> unity_index() const { return unity_index_; }
    double max_abs() const { return max_abs_; }

    const std::optional<Provenance>& provenance() const { return provenance_; }
    void set_provenance(Provenance p) { provenance_ = std::move(p); }

  private:
    int dim_;
    std::vector<double> c_;
    std::vector<std::string> names_;
    std::optional<int> unity_index_;
    std::optional<Provenance> provenance_;
    double max_abs_ = 0.0;
};

/// Bilinear product (a*b)_k = sum_ij a_i b_j c[i][j][k].
inline Element multiply(const StructureTensor& T, const Element& a, const Element& b) {
    const int n = T.dim();
    if (int(a.size()) != n || int(b.size()) != n) throw DimensionMismatch("multiply: element size mismatch");
    Element out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            const double w = ai * b[j];
            if (w == 0.0) continue;
            for (int k = 0; k < n; ++k) out[k] += w * T.c(i, j, k);
        }
    }
    return out;
}

/// Matrix of x -> a*x on the coordinate basis.
inline Matrix left_mul_matrix(const StructureTensor& T, const Element& a) {
    const int n = T.dim();
    if (int(a.size()) != n) throw DimensionMismatch("left_mul_matrix: element size mismatch");
    Matrix L(n, n);
    for (int i = 0; i < n; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) L.at(k, j) += ai * T.c(i, j, k);
    }
    return L;
}

/// Matrix of x -> x*a on the coordinate basis.
inline Matrix right_mul_matrix(const StructureTensor& T, const Element& a) {
    const int n = T.dim();
    if (int(a.size()) != n) throw DimensionMismatch("right_mul_matrix: element size mismatch");
    Matrix R(n, n);
    for (int j = 0; j < n; ++j) {
        const double aj = a[j];
        if (aj == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) R.at(k, i) += aj * T.c(i, j, k);
    }
    return R;
}

/// Two-sided multiplicative identity, if one exists: solves the stacked
/// system u*e_j = e_j, e_j*u = e_j in the least-squares sense and accepts
/// iff every per-basis residual is within tol.eps.
inline std::optional<Element> find_unity(const StructureTensor& T, const Tolerance& tol = Tolerance()) {
    const int n = T.dim();
    if (T.unity_index()) return unit_vec(n, *T.unity_index());

    // Rows: for each (j, k), sum_i u_i c[i][j][k] = delta_jk  (u * e_j = e_j)
    //       for each (i, k), sum_j u_j c[i][j][k] = delta_ik  (e_i * u = e_i)
    Matrix A(2 * n * n, n);
    Vec b(2 * n * n, 0.0);
    int row = 0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k, ++row) {
            for (int i = 0; i < n; ++i) A.at(row, i) = T.c(i, j, k);
            b[row] = (j == k) ? 1.0 : 0.0;
        }
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k, ++row) {
            for (int j = 0; j < n; ++j) A.at(row, j) = T.c(i, j, k);
            b[row] = (i == k) ? 1.0 : 0.0;
        }

    std::optional<Vec> u = solve_linear(A, b, tol);
    if (!u) return std::nullopt;
    for (int j = 0; j < n; ++j) {
        const Element ej = unit_vec(n, j);
        if (norm(sub(multiply(T, *u, ej), ej)) > tol.eps) return std::nullopt;
        if (norm(sub(multiply(T, ej, *u), ej)) > tol.eps) return std::nullopt;
    }
    return u;
}

/// Result of the unity/associativity scan.
struct AxiomReport {
    bool has_unity = false;
    bool associative = false;
    double worst_assoc_residual = 0.0;
    std::optional<std::array<int, 3>> witness_triple;
    std::optional<Element> unity;
};

/// Exhaustive associativity scan over all n^3 basis triples plus unity
/// detection.  The associativity threshold scales with the squared constant
/// magnitude, matching the rounding growth of two chained products.
inline AxiomReport check_axioms(const StructureTensor& T, const Tolerance& tol = Tolerance()) {
    const int n = T.dim();
    AxiomReport rep;
    rep.unity = find_unity(T, tol);
    rep.has_unity = rep.unity.has_value();

    double worst = -1.0;
    std::array<int, 3> worst_triple{0, 0, 0};
    Element p(n), q(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) p[k] = T.c(i, j, k);  // e_i e_j
            for (int k = 0; k < n; ++k) {
                // (e_i e_j) e_k
                Element lhs(n, 0.0);
                for (int m = 0; m < n; ++m) {
                    if (p[m] == 0.0) continue;
                    for (int t = 0; t < n; ++t) lhs[t] += p[m] * T.c(m, k, t);
                }
                // e_i (e_j e_k)
                for (int t = 0; t < n; ++t) q[t] = T.c(j, k, t);
                Element rhs(n, 0.0);
                for (int m = 0; m < n; ++m) {
                    if (q[m] == 0.0) continue;
                    for (int t = 0; t < n; ++t) rhs[t] += q[m] * T.c(i, m, t);
                }
                const double resid = norm(sub(lhs, rhs));
                if (resid > worst) {
                    worst = resid;
                    worst_triple = {i, j, k};
                }
            }
        }
    rep.worst_assoc_residual = std::max(worst, 0.0);
    const double threshold = tol.eps * (1.0 + T.max_abs() * T.max_abs()) * n;
    rep.associative = rep.worst_assoc_residual <= threshold;
    if (!rep.associative) rep.witness_triple = worst_triple;
    return rep;
}

/// x o y = xy + yx.
inline Element anticommutator(const StructureTensor& T, const Element& x, const Element& y) {
    return add(multiply(T, x, y), multiply(T, y, x));
}

/// Least-squares coefficient of x along the unity axis.
inline double scalar_coefficient(const Element& x, const Element& unity) {
    return dot(x, unity) / dot(unity, unity);
}

/// scalar_part_test against a known unity element, with an explicit absolute
/// threshold for the non-scalar remainder.
inline std::optional<double> scalar_part_with(const Element& x, const Element& unity, double threshold) {
    const double lambda = scalar_coefficient(x, unity);
    if (norm(sub(x, scale(unity, lambda))) <= threshold) return lambda;
    return std::nullopt;
}

/// Coordinate of x along unity when x is a scalar multiple of it, within
/// tol.eps * (1 + ||x||); nullopt otherwise.
inline std::optional<double> scalar_part_test(const StructureTensor& T, const Element& x,
                                              const Tolerance& tol = Tolerance()) {
    std::optional<Element> u = find_unity(T, tol);
    if (!u) throw NoUnityError("scalar_part_test: tensor has no unity");
    return scalar_part_with(x, *u, tol.eps * (1.0 + norm(x)));
}

/// Evaluate p at an algebra element by Horner's scheme, scalars entering as
/// multiples of unity.
inline Element poly_eval_element(const StructureTensor& T, const RealPolynomial& p, const Element& x,
                                 const Element& unity) {
    const int n = T.dim();
    if (p.is_zero()) return Element(n, 0.0);
    Element acc = scale(unity, p.coeffs.back());
    for (int i = int(p.coeffs.size()) - 2; i >= 0; --i) {
        acc = multiply(T, acc, x);
        axpy(acc, p.coeffs[i], unity);
    }
    return acc;
}

/// minimal_polynomial against a known unity element.
inline RealPolynomial minimal_polynomial_with(const StructureTensor& T, const Element& x, const Element& unity,
                                              const Tolerance& tol = Tolerance()) {
    const int n = T.dim();
    if (int(x.size()) != n) throw DimensionMismatch("minimal_polynomial: element size mismatch");

    const double s = std::max(1.0, norm(x));
    const Element xs = scale(x, 1.0 / s);

    std::vector<Element> powers;
    powers.push_back(unity);
    powers.push_back(xs);

    for (int d = 1; d <= n; ++d) {
        while (int(powers.size()) <= d) powers.push_back(multiply(T, powers.back(), xs));
        Matrix K(n, d + 1);
        for (int col = 0; col <= d; ++col)
            for (int r = 0; r < n; ++r) K.at(r, col) = powers[col][r];
        std::vector<Vec> kern = kernel_basis(K, tol);
        if (kern.empty() && d < n) continue;

        // Coefficients: least-squares monic fit of x^d against lower powers,
        // falling back to the kernel vector when the fit is rejected.
        std::vector<double> coeffs(d + 1, 0.0);
        coeffs[d] = 1.0;
        Matrix Klow(n, d);
        for (int col = 0; col < d; ++col)
            for (int r = 0; r < n; ++r) Klow.at(r, col) = powers[col][r];
        Vec rhs = scale(powers[d], -1.0);
        if (auto fit = solve_linear(Klow, rhs, tol)) {
            for (int i = 0; i < d; ++i) coeffs[i] = (*fit)[i];
        } else if (!kern.empty()) {
            const Vec& k0 = kern.front();
            if (std::fabs(k0[d]) < 1e-12) continue;
            for (int i = 0; i <= d; ++i) coeffs[i] = k0[i] / k0[d];
        } else {
            continue;
        }
        // Undo the scaling: m(X) = s^d mhat(X/s).
        for (int i = 0; i <= d; ++i) coeffs[i] *= std::pow(s, double(d - i));
        return RealPolynomial(std::move(coeffs));
    }
    throw std::runtime_error("minimal_polynomial: no dependency found up to dim (numerical breakdown)");
}

/// Monic annihilating polynomial of least degree, found as the first linear
/// dependency among 1, x, x^2, ... (kernel of the growing power matrix,
/// rank decisions shared with kernel_basis).  The element is scaled to unit
/// size first so the power columns stay comparable.
inline RealPolynomial minimal_polynomial(const StructureTensor& T, const Element& x,
                                         const Tolerance& tol = Tolerance()) {
    std::optional<Element> unity = find_unity(T, tol);
    if (!unity) throw NoUnityError("minimal_polynomial: tensor has no unity");
    return minimal_polynomial_with(T, x, *unity, tol);
}

/// Re-express the tensor in the basis f_i = sum_j P[j][i] e_j.
inline StructureTensor change_basis(const StructureTensor& T, const Matrix& P, const Tolerance& tol = Tolerance()) {
    const int n = T.dim();
    if (P.rows != n || P.cols != n) throw DimensionMismatch("change_basis: P size mismatch");
    Matrix Pinv = invert(P, tol);  // throws SingularBasis when rank-deficient

    // E[a][j][m] = sum_b P[b][j] c[a][b][m]
    std::vector<double> E(std::size_t(n) * n * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int j = 0; j < n; ++j) {
                const double p = P.at(b, j);
                if (p == 0.0) continue;
                for (int m = 0; m < n; ++m) E[(std::size_t(a) * n + j) * n + m] += p * T.c(a, b, m);
            }
    // D[i][j][m] = sum_a P[a][i] E[a][j][m]
    std::vector<double> D(std::size_t(n) * n * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i) {
            const double p = P.at(a, i);
            if (p == 0.0) continue;
            for (int j = 0; j < n; ++j)
                for (int m = 0; m < n; ++m)
                    D[(std::size_t(i) * n + j) * n + m] += p * E[(std::size_t(a) * n + j) * n + m];
        }
    // c'[i][j][k] = sum_m Pinv[k][m] D[i][j][m]
    std::vector<double> cp(std::size_t(n) * n * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = 0.0;
                for (int m = 0; m < n; ++m) s += Pinv.at(k, m) * D[(std::size_t(i) * n + j) * n + m];
                cp[(std::size_t(i) * n + j) * n + k] = s;
            }
    return StructureTensor(n, std::move(cp));
}

/// Change of basis placing the unity exactly on slot 0 (delta slices snapped
/// to exact values).  Returns the normalized tensor and the basis-change
/// matrix P (columns = new basis in old coordinates), or nullopt when the
/// tensor has no unity.
inline std::optional<std::pair<StructureTensor, Matrix>> normalize_unity(const StructureTensor& T,
                                                                         const Tolerance& tol = Tolerance()) {
    const int n = T.dim();
    std::optional<Element> u = find_unity(T, tol);
    if (!u) return std::nullopt;

    // Complete u to a basis with standard vectors, dropping the axis most
    // represented in u to keep P well conditioned.
    int drop = 0;
    for (int i = 1; i < n; ++i)
        if (std::fabs((*u)[i]) > std::fabs((*u)[drop])) drop = i;
    Matrix P(n, n);
    for (int i = 0; i < n; ++i) P.at(i, 0) = (*u)[i];
    int col = 1;
    for (int i = 0; i < n; ++i) {
        if (i == drop) continue;
        P.at(i, col) = 1.0;
        ++col;
    }
    StructureTensor R = change_basis(T, P, tol);
    std::vector<double> cs = R.constants();
    auto idx = [n](int i, int j, int k) { return (std::size_t(i) * n + j) * n + k; };
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            cs[idx(0, j, k)] = (j == k) ? 1.0 : 0.0;
            cs[idx(j, 0, k)] = (j == k) ? 1.0 : 0.0;
        }
    StructureTensor out(n, std::move(cs), {}, 0);
    return std::make_pair(std::move(out), std::move(P));
}

}  // namespace divalg
