#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "divalg/matrix.hpp"
#include "divalg/tolerance.hpp"

namespace divalg {

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Real polynomial, coefficients in ascending degree.  The zero polynomial is
/// the empty coefficient list; otherwise the last coefficient is nonzero.
struct RealPolynomial {
    std::vector<double> coeffs;

    RealPolynomial() = default;
    explicit RealPolynomial(std::vector<double> c) : coeffs(std::move(c)) {
        while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
        for (double v : coeffs)
            if (!std::isfinite(v)) throw std::invalid_argument("RealPolynomial: non-finite coefficient");
    }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return int(coeffs.size()) - 1; }

    double eval(double x) const {
        if (coeffs.empty()) return 0.0;
        double s = coeffs.back();
        for (int i = int(coeffs.size()) - 2; i >= 0; --i) s = s * x + coeffs[i];
        return s;
    }

    RealPolynomial derivative() const {
        if (coeffs.size() <= 1) return RealPolynomial{};
        std::vector<double> d(coeffs.size() - 1);
        for (std::size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = double(i) * coeffs[i];
        return RealPolynomial(std::move(d));
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (double v : coeffs) m = std::max(m, std::fabs(v));
        return m;
    }
};

inline RealPolynomial poly_mul(const RealPolynomial& p, const RealPolynomial& q) {
    if (p.is_zero() || q.is_zero()) return RealPolynomial{};
    std::vector<double> c(p.coeffs.size() + q.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        for (std::size_t j = 0; j < q.coeffs.size(); ++j) c[i + j] += p.coeffs[i] * q.coeffs[j];
    return RealPolynomial(std::move(c));
}

namespace detail {

/// Cauchy root bound B = 1 + max|a_i| / |a_lead|.
inline double cauchy_bound(const std::vector<double>& c) {
    double lead = std::fabs(c.back());
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::fabs(c[i]));
    return 1.0 + m / lead;
}

inline double eval_coeffs(const std::vector<double>& c, double x) {
    double s = c.back();
    for (int i = int(c.size()) - 2; i >= 0; --i) s = s * x + c[i];
    return s;
}

inline double eval_deriv(const std::vector<double>& c, double x) {
    const int n = int(c.size()) - 1;
    double s = n * c[n];
    for (int i = n - 1; i >= 1; --i) s = s * x + i * c[i];
    return s;
}

/// Bisect a bracketing interval down to width 1e-13, then polish with a few
/// guarded Newton steps.  Returns the point of smallest |p| seen.
inline double bisect_root(const std::vector<double>& c, double lo, double hi) {
    double flo = eval_coeffs(c, lo);
    if (flo == 0.0) return lo;
    double fhi = eval_coeffs(c, hi);
    if (fhi == 0.0) return hi;
    for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = eval_coeffs(c, mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    double best = 0.5 * (lo + hi);
    double fbest = std::fabs(eval_coeffs(c, best));
    double x = best;
    const double span = hi - lo;
    for (int it = 0; it < 4; ++it) {
        const double d = eval_deriv(c, x);
        if (d == 0.0) break;
        x -= eval_coeffs(c, x) / d;
        // Stay inside the bracket so the polish cannot drift to another root.
        if (!std::isfinite(x) || x < lo - span || x > hi + span) break;
        const double fx = std::fabs(eval_coeffs(c, x));
        if (fx < fbest) {
            fbest = fx;
            best = x;
        }
    }
    return best;
}

/// All real roots of the monic-normalized coefficient list c, distinct and
/// ascending.  The real line is split at the critical points (roots of the
/// derivative, found recursively) so each piece is monotonic; sign changes
/// are bisected, and even-multiplicity roots show up at critical points
/// where |p| falls below the residual threshold.
inline std::vector<double> real_roots_monic(const std::vector<double>& c, double residual_tol) {
    const int deg = int(c.size()) - 1;
    std::vector<double> roots;
    if (deg == 1) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }
    if (deg == 2) {
        const double A = c[2], B = c[1], C = c[0];
        const double disc = B * B - 4.0 * A * C;
        if (disc < 0.0) return roots;
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
        double r1 = q / A;
        double r2 = (q != 0.0) ? C / q : r1;
        if (r1 > r2) std::swap(r1, r2);
        roots.push_back(r1);
        if (r2 - r1 > 1e-12 * (1.0 + std::fabs(r1))) roots.push_back(r2);
        return roots;
    }

    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = double(i) * c[i];
    std::vector<double> crit = real_roots_monic(d, residual_tol);

    const double B = cauchy_bound(c);
    std::vector<double> grid;
    grid.push_back(-B);
    for (double t : crit)
        if (t > -B && t < B) grid.push_back(t);
    grid.push_back(B);

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double lo = grid[i], hi = grid[i + 1];
        const double flo = eval_coeffs(c, lo), fhi = eval_coeffs(c, hi);
        if ((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0))
            roots.push_back(bisect_root(c, lo, hi));
        else if (flo == 0.0)
            roots.push_back(lo);
    }
    for (double t : crit)
        if (std::fabs(eval_coeffs(c, t)) <= residual_tol) roots.push_back(t);

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || r - out.back() > 1e-9 * (1.0 + std::fabs(r))) out.push_back(r);
    return out;
}

/// Synthetic division by (X - r); returns the deflated polynomial.
inline std::vector<double> deflate_linear(const std::vector<double>& c, double r) {
    const int n = int(c.size()) - 1;
    std::vector<double> q(n);
    double carry = c[n];
    for (int i = n - 1; i >= 0; --i) {
        q[i] = carry;
        carry = c[i] + r * carry;
    }
    return q;
}

/// Quotient of division by X^2 + uX + v (remainder discarded).
inline std::vector<double> deflate_quadratic(const std::vector<double>& c, double u, double v) {
    const int n = int(c.size()) - 1;
    std::vector<double> b(n + 1, 0.0);
    b[n] = c[n];
    b[n - 1] = c[n - 1] - u * b[n];
    for (int i = n - 2; i >= 0; --i) b[i] = c[i] - u * b[i + 1] - v * b[i + 2];
    return std::vector<double>(b.begin() + 2, b.end());
}

/// One Newton step of Bairstow's iteration for a quadratic factor
/// X^2 + uX + v of c (degree >= 3).  Returns false on a singular Jacobian.
inline bool bairstow_step(const std::vector<double>& c, double& u, double& v) {
    const int n = int(c.size()) - 1;
    std::vector<double> b(n + 2, 0.0), f(n + 2, 0.0);
    b[n] = c[n];
    b[n - 1] = c[n - 1] - u * b[n];
    for (int i = n - 2; i >= 0; --i) b[i] = c[i] - u * b[i + 1] - v * b[i + 2];
    f[n] = b[n];
    f[n - 1] = b[n - 1] - u * f[n];
    for (int i = n - 2; i >= 1; --i) f[i] = b[i] - u * f[i + 1] - v * f[i + 2];
    // Remainder (b1, b0) has Jacobian [[f2, f3], [f1, f2]] w.r.t. (-du, -dv).
    const double D = f[2] * f[2] - f[1] * f[3];
    if (!(std::fabs(D) > 1e-300)) return false;
    const double du = (b[1] * f[2] - b[0] * f[3]) / D;
    const double dv = (b[0] * f[2] - b[1] * f[1]) / D;
    u += du;
    v += dv;
    return std::isfinite(u) && std::isfinite(v);
}

}  // namespace detail

/// Distinct real roots of p in ascending order.  Each returned r satisfies
/// |p(r)| <= tol.eps * (1 + max|coeff|); for odd degree the list is nonempty.
inline std::vector<double> real_roots(const RealPolynomial& p, const Tolerance& tol = Tolerance()) {
    if (p.is_zero() || p.degree() < 1) throw std::invalid_argument("real_roots: need degree >= 1");
    std::vector<double> c = p.coeffs;
    const double lead = c.back();
    for (double& v : c) v /= lead;
    double cmax = 0.0;
    for (double v : c) cmax = std::max(cmax, std::fabs(v));
    const double residual_tol = tol.eps * (1.0 + p.max_abs_coeff());
    std::vector<double> roots = detail::real_roots_monic(c, tol.eps * (1.0 + cmax));
    std::vector<double> out;
    for (double r : roots)
        if (std::fabs(p.eval(r)) <= residual_tol) out.push_back(r);
    return out;
}

/// Factor the monic normalization of p into monic linear and
/// negative-discriminant quadratic factors.  Linear factors are peeled by
/// bisection plus synthetic-division deflation; quadratics by Bairstow
/// fixed-point iteration on (u, v) pairs with a total budget of 10000
/// iterations.  Throws ConvergenceFailure when the budget is exhausted.
inline std::vector<RealPolynomial> factor_linear_quadratic(const RealPolynomial& p,
                                                           const Tolerance& tol = Tolerance()) {
    if (p.is_zero() || p.degree() < 1) throw std::invalid_argument("factor_linear_quadratic: need degree >= 1");
    std::vector<double> c = p.coeffs;
    const double lead = c.back();
    for (double& v : c) v /= lead;

    std::vector<RealPolynomial> factors;
    int budget = 10000;

    auto push_quadratic = [&](double u, double v) {
        const double disc = u * u - 4.0 * v;
        if (disc < 0.0) {
            factors.push_back(RealPolynomial({v, u, 1.0}));
        } else {
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (u + (u >= 0.0 ? sq : -sq));
            const double r1 = q;
            const double r2 = (q != 0.0) ? v / q : q;
            factors.push_back(RealPolynomial({-r1, 1.0}));
            factors.push_back(RealPolynomial({-r2, 1.0}));
        }
    };

    // Peel real roots (with multiplicity, by repeated deflation).
    while (c.size() > 3) {
        std::vector<double> roots = real_roots(RealPolynomial(c), tol);
        if (roots.empty()) break;
        const double r = roots.front();
        factors.push_back(RealPolynomial({-r, 1.0}));
        c = detail::deflate_linear(c, r);
    }

    // Peel quadratic factors from the remaining even-degree part.
    while (c.size() > 3) {
        double u = c[c.size() - 2] / c.back();
        double v = c[c.size() - 3] / c.back();
        bool converged = false;
        for (int attempt = 0; attempt < 8 && !converged && budget > 0; ++attempt) {
            if (attempt > 0) {
                u = 0.3 * attempt;
                v = 1.0 + 0.7 * attempt;
            }
            for (int it = 0; it < 1000 && budget > 0; ++it, --budget) {
                const double pu = u, pv = v;
                if (!detail::bairstow_step(c, u, v)) break;
                if (std::fabs(u - pu) + std::fabs(v - pv) <= 1e-14 * (1.0 + std::fabs(u) + std::fabs(v))) {
                    converged = true;
                    break;
                }
            }
        }
        if (!converged)
            throw ConvergenceFailure("factor_linear_quadratic: quadratic peeling did not converge");
        push_quadratic(u, v);
        c = detail::deflate_quadratic(c, u, v);
    }

    if (c.size() == 3) {
        push_quadratic(c[1] / c[2], c[0] / c[2]);
    } else if (c.size() == 2) {
        factors.push_back(RealPolynomial({c[0] / c[1], 1.0}));
    }
    return factors;
}

}  // namespace divalg
