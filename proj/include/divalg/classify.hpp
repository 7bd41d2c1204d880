#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/linalg.hpp"
#include "divalg/quaternion.hpp"

namespace divalg {

struct EvenDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotASuccess : std::logic_error {
    using std::logic_error::logic_error;
};

// ---- witnesses -------------------------------------------------------------

/// Pair of unit-norm elements whose product is numerically zero; certifies
/// non-division by one multiplication.
struct ZeroDivisorWitness {
    Element a, b;
    double product_residual = 0.0;
};

struct NonAssociativeWitness {
    std::array<int, 3> triple{0, 0, 0};
    double residual = 0.0;
};

struct NoUnityWitness {};

/// Terminal diagnostic for inputs that defeat the constructive steps without
/// yielding a one-multiplication certificate.
struct NotAlgebraicStepWitness {
    std::string detail;
    Element x, y;
    double residual = 0.0;
};

struct Witness {
    std::variant<ZeroDivisorWitness, NonAssociativeWitness, NoUnityWitness, NotAlgebraicStepWitness> kind;

    std::string kind_name() const {
        if (std::holds_alternative<ZeroDivisorWitness>(kind)) return "zero_divisor";
        if (std::holds_alternative<NonAssociativeWitness>(kind)) return "non_associative";
        if (std::holds_alternative<NoUnityWitness>(kind)) return "no_unity";
        return "not_algebraic_step";
    }
};

// ---- V and outcomes --------------------------------------------------------

/// The square-nonpositive part V = { v : v^2 <= 0 } of a unital tensor,
/// as constructed from the projected basis vectors.
struct VSpace {
    Element unity;
    std::vector<Element> projections;  // raw in-V images, basis-index order
    std::vector<Element> basis;        // Euclidean-orthonormal span basis
    Matrix gram;                       // <u|v> = -1/2 scalar(u o v) on `basis`

    int dim() const { return int(basis.size()); }
};

struct Success {
    Label label = Label::R;
    Matrix iso;              // input coordinates -> canonical target coordinates
    double residual = 0.0;   // max homomorphism defect over basis pairs
};

struct ClassificationOutcome {
    std::variant<Success, Witness> result;
    AxiomReport axioms;
    std::string branch;  // which step of the construction decided the outcome

    bool ok() const { return std::holds_alternative<Success>(result); }
    const Success& success() const {
        if (!ok()) throw NotASuccess("outcome is a failure");
        return std::get<Success>(result);
    }
    const Witness& witness() const {
        if (ok()) throw std::logic_error("outcome is a success");
        return std::get<Witness>(result);
    }
};

// ---- project_to_V ----------------------------------------------------------

struct Projection {
    Element v;
    double alpha = 0.0;
};

struct RealElement {
    double lambda = 0.0;
};

using ProjectResult = std::variant<Projection, RealElement, Witness>;

namespace detail {

inline Witness make_zero_divisor(const StructureTensor& T, Element a, Element b) {
    const double na = norm(a), nb = norm(b);
    if (!(na > 0.0) || !(nb > 0.0)) {
        NotAlgebraicStepWitness w;
        w.detail = "zero-divisor factor degenerated to zero";
        w.x = std::move(a);
        w.y = std::move(b);
        return Witness{std::move(w)};
    }
    a = scale(a, 1.0 / na);
    b = scale(b, 1.0 / nb);
    ZeroDivisorWitness w;
    w.product_residual = norm(multiply(T, a, b));
    w.a = std::move(a);
    w.b = std::move(b);
    return Witness{std::move(w)};
}

/// Claim (4) turned into a certificate: an element whose square is the
/// scalar s >= 0 factors as (v - gamma)(v + gamma) = 0, or v*v = 0 when the
/// square vanishes.  nullopt when s is genuinely negative.
inline std::optional<Witness> claim4_witness(const StructureTensor& T, const Element& v, double s,
                                             const Element& unity, const Tolerance& tol) {
    const double thr = tol.eps * (1.0 + dot(v, v));
    if (s > thr) {
        const double gamma = std::sqrt(s);
        return make_zero_divisor(T, sub(v, scale(unity, gamma)), add(v, scale(unity, gamma)));
    }
    if (s >= -thr) return make_zero_divisor(T, v, v);
    return std::nullopt;
}

inline ProjectResult project_with(const StructureTensor& T, const Element& x, const Element& unity,
                                  const Tolerance& tol) {
    const double nx = norm(x);
    if (auto lam = scalar_part_with(x, unity, tol.eps * (1.0 + nx))) return RealElement{*lam};

    const RealPolynomial m = minimal_polynomial_with(T, x, unity, tol);
    const int d = m.degree();
    if (d <= 1) return RealElement{d == 1 ? -m.coeffs[0] : 0.0};

    if (d == 2) {
        const double alpha = m.coeffs[1];
        Element v = add(x, scale(unity, alpha / 2.0));
        const Element sq = multiply(T, v, v);
        const double thr = tol.eps * (1.0 + dot(v, v));
        const auto s = scalar_part_with(sq, unity, thr);
        if (!s) {
            NotAlgebraicStepWitness w;
            w.detail = "projected square is not a scalar";
            w.x = x;
            w.y = v;
            w.residual = norm(sub(sq, scale(unity, scalar_coefficient(sq, unity))));
            return Witness{std::move(w)};
        }
        if (*s < -thr) return Projection{std::move(v), alpha};
        if (norm(v) <= std::sqrt(tol.eps) * (1.0 + nx)) return RealElement{scalar_coefficient(x, unity)};
        return *claim4_witness(T, v, *s, unity, tol);
    }

    // Degree > 2: in a division algebra this cannot happen, so the factor
    // split of the annihilating polynomial yields a zero divisor.
    std::vector<RealPolynomial> factors = factor_linear_quadratic(m, tol);
    const RealPolynomial& g = factors.front();
    RealPolynomial h({1.0});
    for (std::size_t i = 1; i < factors.size(); ++i) h = poly_mul(h, factors[i]);
    Element a = poly_eval_element(T, g, x, unity);
    Element b = poly_eval_element(T, h, x, unity);
    const double tiny = tol.eps * (1.0 + std::pow(1.0 + nx, double(d)));
    if (norm(a) <= tiny || norm(b) <= tiny) {
        NotAlgebraicStepWitness w;
        w.detail = "degenerate factor split of the annihilating polynomial";
        w.x = a;
        w.y = b;
        return Witness{std::move(w)};
    }
    return make_zero_divisor(T, std::move(a), std::move(b));
}

}  // namespace detail

/// Claim (5) realized: for non-scalar x with quadratic minimal polynomial
/// X^2 + aX + b, the shift x + a/2 lands in V; a positive or vanishing
/// square instead certifies a zero divisor, and degree > 2 splits into one.
inline ProjectResult project_to_V(const StructureTensor& T, const Element& x, const Tolerance& tol = Tolerance()) {
    std::optional<Element> u = find_unity(T, tol);
    if (!u) throw NoUnityError("project_to_V: tensor has no unity");
    return detail::project_with(T, x, *u, tol);
}

// ---- build_V ---------------------------------------------------------------

using BuildVResult = std::variant<VSpace, Witness>;

namespace detail {

inline BuildVResult build_v_with(const StructureTensor& T, const Element& unity, const Tolerance& tol) {
    const int n = T.dim();
    VSpace V;
    V.unity = unity;

    for (int bidx = 0; bidx < n; ++bidx) {
        const Element x = unit_vec(n, bidx);
        ProjectResult pr = project_with(T, x, unity, tol);
        if (std::holds_alternative<RealElement>(pr)) continue;
        if (std::holds_alternative<Witness>(pr)) return std::get<Witness>(std::move(pr));
        V.projections.push_back(std::get<Projection>(std::move(pr)).v);
    }

    // Euclidean-orthonormal basis of the span, kept in projection order.
    for (const Element& v : V.projections) {
        Element w = v;
        for (const Element& b : V.basis) axpy(w, -dot(w, b), b);
        for (const Element& b : V.basis) axpy(w, -dot(w, b), b);
        const double nw = norm(w);
        if (nw > tol.eps * (1.0 + norm(v))) V.basis.push_back(scale(w, 1.0 / nw));
    }

    const int m = V.dim();
    if (m != n - 1) {
        NotAlgebraicStepWitness w;
        w.detail = "span of projected basis vectors has dimension " + std::to_string(m) + ", expected " +
                   std::to_string(n - 1);
        return Witness{std::move(w)};
    }
    if (m == 0) return V;  // one-dimensional algebra: V = {0}

    // Gram matrix <u|v> = -1/2 scalar(u o v); claim (6) says every entry is
    // scalar for a division algebra.
    V.gram = Matrix(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            const Element ac = anticommutator(T, V.basis[a], V.basis[b]);
            const double thr = tol.eps * (1.0 + dot(V.basis[a], V.basis[a]) + dot(V.basis[b], V.basis[b]));
            const auto s = scalar_part_with(ac, unity, thr);
            if (!s) {
                NotAlgebraicStepWitness w;
                w.detail = "anticommutator of V basis pair is not scalar";
                w.x = V.basis[a];
                w.y = V.basis[b];
                w.residual = norm(sub(ac, scale(unity, scalar_coefficient(ac, unity))));
                return Witness{std::move(w)};
            }
            V.gram.at(a, b) = -0.5 * (*s);
            V.gram.at(b, a) = V.gram.at(a, b);
        }

    // Positive definiteness: a non-positive direction is an element of V
    // with a square >= 0, which claim (4) turns into a zero divisor.
    std::vector<std::pair<double, Vec>> eig = real_eigenpairs(V.gram, tol);
    if (!eig.empty()) {
        const auto& [lmin, wmin] = eig.front();
        if (lmin <= tol.eps * (1.0 + V.gram.max_abs())) {
            Element v(n, 0.0);
            for (int a = 0; a < m; ++a) axpy(v, wmin[a], V.basis[a]);
            const Element sq = multiply(T, v, v);
            const double s = scalar_coefficient(sq, unity);
            if (auto w = claim4_witness(T, v, s, unity, tol)) return *w;
            NotAlgebraicStepWitness w;
            w.detail = "gram matrix is not positive definite but the deficient direction has negative square";
            w.x = v;
            w.residual = lmin;
            return Witness{std::move(w)};
        }
    }
    return V;
}

}  // namespace detail

/// Builds V from the projections of all non-scalar basis vectors, asserts
/// dim V = dim - 1, and equips it with the induced inner product.
inline BuildVResult build_V(const StructureTensor& T, const Tolerance& tol = Tolerance()) {
    std::optional<Element> u = find_unity(T, tol);
    if (!u) throw NoUnityError("build_V: tensor has no unity");
    return detail::build_v_with(T, *u, tol);
}

// ---- classifier ------------------------------------------------------------

namespace detail {

/// Canonical-target multiplication through the quaternion reference.
inline Vec target_mul(Label label, const Vec& a, const Vec& b) {
    const Quaternion q = qmul(embed(label, a), embed(label, b));
    Vec out(label_dim(label), 0.0);
    out[0] = q.w;
    if (label != Label::R) out[1] = q.x;
    if (label == Label::H) {
        out[2] = q.y;
        out[3] = q.z;
    }
    return out;
}

/// Max over basis pairs of ||phi(e_a e_b) - phi(e_a) phi(e_b)|| in the
/// canonical target.
inline double hom_residual(const StructureTensor& T, Label label, const Matrix& iso) {
    const int n = T.dim();
    double worst = 0.0;
    std::vector<Vec> phi(n);
    for (int a = 0; a < n; ++a) phi[a] = matvec(iso, unit_vec(n, a));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Element prod(n, 0.0);
            for (int k = 0; k < n; ++k) prod[k] = T.c(a, b, k);
            const Vec lhs = matvec(iso, prod);
            const Vec rhs = target_mul(label, phi[a], phi[b]);
            worst = std::max(worst, norm(sub(lhs, rhs)));
        }
    return worst;
}

/// Deterministic hunt for a zero divisor among candidate elements, each
/// pushed through the projection machinery.
inline std::optional<Witness> zero_divisor_scan(const StructureTensor& T, const Element& unity,
                                                const std::vector<Element>& candidates, const Tolerance& tol) {
    for (const Element& x : candidates) {
        if (norm(x) <= tol.eps) continue;
        ProjectResult pr = project_with(T, x, unity, tol);
        if (std::holds_alternative<Witness>(pr)) {
            Witness w = std::get<Witness>(std::move(pr));
            if (std::holds_alternative<ZeroDivisorWitness>(w.kind)) return w;
        }
    }
    return std::nullopt;
}

inline ClassificationOutcome outcome_failure(Witness w, AxiomReport axioms, std::string branch) {
    ClassificationOutcome out;
    out.result = std::move(w);
    out.axioms = std::move(axioms);
    out.branch = std::move(branch);
    return out;
}

inline ClassificationOutcome classify_unital(const StructureTensor& T, const Element& unity, AxiomReport axioms,
                                             const Tolerance& tol) {
    const int n = T.dim();

    BuildVResult bv = detail::build_v_with(T, unity, tol);
    if (std::holds_alternative<Witness>(bv))
        return detail::outcome_failure(std::get<Witness>(std::move(bv)), axioms, "build-v");
    VSpace V = std::get<VSpace>(std::move(bv));
    const int m = V.dim();

    const double rel_tol = tol.eps * (1.0 + T.max_abs()) * n;

    auto success = [&](Label label, const Matrix& B, const std::string& branch) -> ClassificationOutcome {
        ClassificationOutcome out;
        Success s;
        s.label = label;
        try {
            s.iso = invert(B, tol);
        } catch (const SingularBasis&) {
            NotAlgebraicStepWitness w;
            w.detail = "constructed canonical basis is numerically singular";
            return detail::outcome_failure(Witness{std::move(w)}, axioms, branch + "-singular");
        }
        s.residual = detail::hom_residual(T, label, s.iso);
        const double gate = tol.eps * (1.0 + T.max_abs()) * (1.0 + T.max_abs()) * n;
        if (s.residual > gate) {
            NotAlgebraicStepWitness w;
            w.detail = "isomorphism residual " + std::to_string(s.residual) + " exceeds gate";
            return detail::outcome_failure(Witness{std::move(w)}, axioms, branch + "-residual");
        }
        out.result = std::move(s);
        out.axioms = axioms;
        out.branch = branch;
        return out;
    };

    if (m == 0) {
        Matrix B(1, 1);
        B.at(0, 0) = unity[0];
        return success(Label::R, B, "dim-v-0");
    }

    // Unit i: first projected vector with positive induced norm.
    Element i_elem;
    bool have_i = false;
    for (const Element& v : V.projections) {
        const double q = -scalar_coefficient(multiply(T, v, v), unity);
        if (q >= tol.eps * (1.0 + dot(v, v))) {
            i_elem = scale(v, 1.0 / std::sqrt(q));
            have_i = true;
            break;
        }
    }
    if (!have_i) {
        NotAlgebraicStepWitness w;
        w.detail = "no projected basis vector has positive induced norm";
        return detail::outcome_failure(Witness{std::move(w)}, axioms, "choose-i");
    }

    if (m == 1) {
        const double r = norm(add(multiply(T, i_elem, i_elem), unity));
        if (r > rel_tol) {
            NotAlgebraicStepWitness w;
            w.detail = "unit of V fails i^2 = -1, residual " + std::to_string(r);
            w.x = i_elem;
            w.residual = r;
            return detail::outcome_failure(Witness{std::move(w)}, axioms, "dim-v-1");
        }
        Matrix B(n, 2);
        for (int r2 = 0; r2 < n; ++r2) {
            B.at(r2, 0) = unity[r2];
            B.at(r2, 1) = i_elem[r2];
        }
        return success(Label::C, B, "dim-v-1");
    }

    // dim V >= 2: j orthogonal to i through the induced inner product,
    // k = i j.
    auto v_coords = [&](const Element& x) {
        Vec c(m, 0.0);
        for (int a = 0; a < m; ++a) c[a] = dot(x, V.basis[a]);
        return c;
    };
    auto v_element = [&](const Vec& c) {
        Element x(n, 0.0);
        for (int a = 0; a < m; ++a) axpy(x, c[a], V.basis[a]);
        return x;
    };

    const Vec ci = v_coords(i_elem);
    std::optional<Vec> cj = orthonormal_complement_unit({ci}, V.gram, m, tol);
    if (!cj) {
        NotAlgebraicStepWitness w;
        w.detail = "no unit orthogonal to i in V";
        return detail::outcome_failure(Witness{std::move(w)}, axioms, "choose-j");
    }
    const Element j_elem = v_element(*cj);
    const Element k_elem = multiply(T, i_elem, j_elem);

    if (m > 3) {
        // The final contradiction of the construction: e orthogonal to
        // span{i, j, k} satisfies e k = 0; the witness is one multiplication.
        const Vec ck = v_coords(k_elem);
        std::optional<Vec> ce = orthonormal_complement_unit({ci, *cj, ck}, V.gram, m, tol);
        if (ce) {
            const Element e_elem = v_element(*ce);
            Witness w = detail::make_zero_divisor(T, e_elem, k_elem);
            const auto& zd = std::get<ZeroDivisorWitness>(w.kind);
            if (zd.product_residual <= tol.eps * (1.0 + T.max_abs()) * n)
                return detail::outcome_failure(std::move(w), axioms, "dim-v-gt3");
            // The premises were only met within tolerance; hunt for a
            // checkable certificate instead of returning an unsound pair.
            std::vector<Element> cands = {k_elem, add(i_elem, j_elem), add(i_elem, k_elem), add(j_elem, k_elem)};
            for (int a = 0; a < n; ++a) cands.push_back(unit_vec(n, a));
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) cands.push_back(add(unit_vec(n, a), unit_vec(n, b)));
            if (auto found = detail::zero_divisor_scan(T, unity, cands, tol))
                return detail::outcome_failure(std::move(*found), axioms, "dim-v-gt3");
            NotAlgebraicStepWitness nw;
            nw.detail = "e-orthogonal witness pair fails its product check, residual " +
                        std::to_string(zd.product_residual);
            nw.x = zd.a;
            nw.y = zd.b;
            nw.residual = zd.product_residual;
            return detail::outcome_failure(Witness{std::move(nw)}, axioms, "dim-v-gt3");
        }
        NotAlgebraicStepWitness w;
        w.detail = "no unit orthogonal to span{i,j,k} in V";
        return detail::outcome_failure(Witness{std::move(w)}, axioms, "dim-v-gt3");
    }

    // Verify the nine defining relations.
    const Element neg_u = scale(unity, -1.0);
    const std::array<std::pair<Element, Element>, 9> relations = {{
        {multiply(T, i_elem, i_elem), neg_u},
        {multiply(T, j_elem, j_elem), neg_u},
        {multiply(T, k_elem, k_elem), neg_u},
        {multiply(T, i_elem, j_elem), k_elem},
        {multiply(T, j_elem, i_elem), scale(k_elem, -1.0)},
        {multiply(T, j_elem, k_elem), i_elem},
        {multiply(T, k_elem, j_elem), scale(i_elem, -1.0)},
        {multiply(T, k_elem, i_elem), j_elem},
        {multiply(T, i_elem, k_elem), scale(j_elem, -1.0)},
    }};
    double worst_rel = 0.0;
    for (const auto& [lhs, rhs] : relations) worst_rel = std::max(worst_rel, norm(sub(lhs, rhs)));

    if (m == 3 && worst_rel <= rel_tol) {
        Matrix B(n, 4);
        for (int r = 0; r < n; ++r) {
            B.at(r, 0) = unity[r];
            B.at(r, 1) = i_elem[r];
            B.at(r, 2) = j_elem[r];
            B.at(r, 3) = k_elem[r];
        }
        if (numerical_rank(B, tol) == 4) return success(Label::H, B, "dim-v-3");
        NotAlgebraicStepWitness w;
        w.detail = "constructed {1,i,j,k} is numerically dependent";
        return detail::outcome_failure(Witness{std::move(w)}, axioms, "dim-v-3");
    }

    // dim V = 2, or relations that no division algebra can break: derive a
    // zero divisor from the quadratic structure, deterministically.
    std::vector<Element> cands = {k_elem, add(i_elem, j_elem), sub(i_elem, j_elem), add(i_elem, k_elem),
                                  add(j_elem, k_elem)};
    for (int a = 0; a < n; ++a) cands.push_back(unit_vec(n, a));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) cands.push_back(add(unit_vec(n, a), unit_vec(n, b)));
    const std::string branch = (m == 2) ? "dim-v-2" : "relations";
    if (auto found = detail::zero_divisor_scan(T, unity, cands, tol))
        return detail::outcome_failure(std::move(*found), axioms, branch);
    NotAlgebraicStepWitness w;
    w.detail = (m == 2) ? "dim V = 2: no zero-divisor reduction found"
                        : "relation check failed (residual " + std::to_string(worst_rel) +
                              ") but no zero-divisor reduction found";
    w.residual = worst_rel;
    return detail::outcome_failure(Witness{std::move(w)}, axioms, branch);
}

}  // namespace detail

/// The constructive classification.  Total: every input yields either an
/// explicit isomorphism onto R, C or H, or a machine-checkable witness of
/// why the input is not a division algebra.
inline ClassificationOutcome classify(const StructureTensor& T, const Tolerance& tol = Tolerance()) {
    AxiomReport axioms = check_axioms(T, tol);

    if (!axioms.has_unity)
        return detail::outcome_failure(Witness{NoUnityWitness{}}, axioms, "axioms-unity");
    if (!axioms.associative) {
        NonAssociativeWitness w;
        w.triple = *axioms.witness_triple;
        w.residual = axioms.worst_assoc_residual;
        return detail::outcome_failure(Witness{std::move(w)}, axioms, "axioms-associativity");
    }
    const Element unity = *axioms.unity;
    try {
        return detail::classify_unital(T, unity, axioms, tol);
    } catch (const std::runtime_error& e) {
        NotAlgebraicStepWitness w;
        w.detail = std::string("numerical breakdown: ") + e.what();
        return detail::outcome_failure(Witness{std::move(w)}, axioms, "breakdown");
    }
}

// ---- odd-dimension shortcut ------------------------------------------------

/// The odd-dimension fast path: for any non-scalar basis element d, a real
/// eigenpair (lambda, w) of left multiplication by d gives (d - lambda) w = 0.
inline std::variant<Success, Witness> odd_dimension_shortcut(const StructureTensor& T,
                                                             const Tolerance& tol = Tolerance()) {
    const int n = T.dim();
    if (n % 2 == 0) throw EvenDimension("odd_dimension_shortcut: dimension is even");
    std::optional<Element> unity = find_unity(T, tol);
    if (!unity) return Witness{NoUnityWitness{}};

    const double gate = tol.eps * (1.0 + T.max_abs()) * n;
    std::optional<Witness> fallback;
    double fallback_resid = std::numeric_limits<double>::infinity();
    bool saw_nonscalar = false;
    for (int bidx = 0; bidx < n; ++bidx) {
        const Element d = unit_vec(n, bidx);
        if (scalar_part_with(d, *unity, tol.eps * (1.0 + norm(d)))) continue;
        saw_nonscalar = true;
        const Matrix L = left_mul_matrix(T, d);
        for (const auto& [lambda, w] : real_eigenpairs(L, tol)) {
            Element shifted = sub(d, scale(*unity, lambda));
            if (norm(shifted) <= std::sqrt(tol.eps) * (1.0 + norm(d))) continue;
            Witness wit = detail::make_zero_divisor(T, std::move(shifted), w);
            if (const auto* zd = std::get_if<ZeroDivisorWitness>(&wit.kind)) {
                if (zd->product_residual <= gate) return wit;
                if (zd->product_residual < fallback_resid) {
                    fallback_resid = zd->product_residual;
                    fallback = std::move(wit);
                }
            }
        }
    }
    if (saw_nonscalar) {
        if (fallback) return *fallback;
        NotAlgebraicStepWitness w;
        w.detail = "no real eigenpair produced a usable annihilating pair";
        return Witness{std::move(w)};
    }
    // Every basis element is scalar: the algebra is R itself.
    Success s;
    s.label = Label::R;
    Matrix B(1, 1);
    B.at(0, 0) = (*unity)[0];
    s.iso = invert(B, tol);
    s.residual = detail::hom_residual(T, Label::R, s.iso);
    return s;
}

// ---- independent certification ----------------------------------------------

/// Recomputes the homomorphism defect of a Success outcome in the canonical
/// target arithmetic, plus the rank check of the isomorphism matrix.
/// Returns infinity when the matrix is rank-deficient.
inline double verify_isomorphism(const StructureTensor& T, const ClassificationOutcome& outcome,
                                 const Tolerance& tol = Tolerance()) {
    const Success& s = outcome.success();  // throws NotASuccess on failure outcomes
    if (s.iso.rows != label_dim(s.label) || s.iso.cols != T.dim())
        throw std::logic_error("verify_isomorphism: iso shape does not match label/input");
    if (numerical_rank(s.iso, tol) < T.dim()) return std::numeric_limits<double>::infinity();
    return detail::hom_residual(T, s.label, s.iso);
}

}  // namespace divalg
