#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/quaternion.hpp"

namespace divalg {

/// splitmix64: the library's one RNG, written out so fixtures are
/// reproducible across implementations.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1): top 53 bits scaled by 2^-53.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [-1, 1).
    double symmetric() { return 2.0 * uniform() - 1.0; }
};

namespace detail {

/// 2-norm condition estimate through the eigenvalues of P^T P.
inline double condition_estimate(const Matrix& P) {
    const Matrix G = transpose(P) * P;
    Tolerance loose(1e-9, 1e-9);
    const auto eig = real_eigenpairs(G, loose);
    if (eig.empty()) return std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& [l, v] : eig) {
        lo = std::min(lo, l);
        hi = std::max(hi, l);
    }
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return std::sqrt(hi / lo);
}

}  // namespace detail

/// Seeded random invertible basis change with condition number <= 1e3,
/// rejection-sampled.
inline Matrix random_well_conditioned(int dim, SplitMix64& rng, double max_cond = 1e3) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Matrix P(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) P.at(i, j) = rng.symmetric();
        if (P.max_abs() < 0.2) continue;
        if (detail::condition_estimate(P) <= max_cond) return P;
    }
    throw std::runtime_error("random_well_conditioned: rejection sampling failed");
}

// ---- fixture tensors ---------------------------------------------------------

/// Split 2x2 matrix algebra on the basis E11, E12, E21, E22.
inline StructureTensor m2r_tensor() {
    const int n = 4;
    std::vector<double> c(n * n * n, 0.0);
    // index m = 2*row + col for E_{row,col}; E_ab * E_cd = delta_bc E_ad.
    auto idx = [](int r, int cc) { return 2 * r + cc; };
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int cc = 0; cc < 2; ++cc)
                for (int d = 0; d < 2; ++d)
                    if (b == cc) c[(std::size_t(idx(a, b)) * n + idx(cc, d)) * n + idx(a, d)] = 1.0;
    return StructureTensor(n, std::move(c), {"E11", "E12", "E21", "E22"});
}

/// Dual numbers {1, eps | eps^2 = 0}.
inline StructureTensor dual_tensor() {
    std::vector<double> c(8, 0.0);
    auto set = [&](int i, int j, int k, double v) { c[(std::size_t(i) * 2 + j) * 2 + k] = v; };
    set(0, 0, 0, 1.0);
    set(0, 1, 1, 1.0);
    set(1, 0, 1, 1.0);
    return StructureTensor(2, std::move(c), {"1", "eps"}, 0);
}

/// R^n with componentwise multiplication; unity is (1, ..., 1).
inline StructureTensor rn_componentwise_tensor(int n) {
    if (n < 1 || n > kMaxTensorDim) throw std::invalid_argument("rn_componentwise_tensor: bad dimension");
    std::vector<double> c(std::size_t(n) * n * n, 0.0);
    for (int i = 0; i < n; ++i) c[(std::size_t(i) * n + i) * n + i] = 1.0;
    return StructureTensor(n, std::move(c));
}

/// R + C as a 3-dimensional algebra on the basis (1,0), (0,1), (0,i).
inline StructureTensor r_plus_c_tensor() {
    const int n = 3;
    std::vector<double> c(27, 0.0);
    auto set = [&](int i, int j, int k, double v) { c[(std::size_t(i) * n + j) * n + k] = v; };
    set(0, 0, 0, 1.0);  // f0 f0 = f0
    set(1, 1, 1, 1.0);  // f1 f1 = f1
    set(1, 2, 2, 1.0);  // f1 f2 = f2
    set(2, 1, 2, 1.0);  // f2 f1 = f2
    set(2, 2, 1, -1.0); // f2 f2 = -f1
    return StructureTensor(n, std::move(c));
}

/// Octonions by the Cayley-Dickson doubling of the integer quaternion
/// table: (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
inline StructureTensor octonion_tensor() {
    const int n = 8;
    auto qbasis = [](int m) {
        Quaternion q;
        if (m == 0)
            q.w = 1.0;
        else if (m == 1)
            q.x = 1.0;
        else if (m == 2)
            q.y = 1.0;
        else
            q.z = 1.0;
        return q;
    };
    std::vector<double> c(std::size_t(n) * n * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Quaternion a = (i < 4) ? qbasis(i) : Quaternion{};
            const Quaternion b = (i < 4) ? Quaternion{} : qbasis(i - 4);
            const Quaternion cc = (j < 4) ? qbasis(j) : Quaternion{};
            const Quaternion d = (j < 4) ? Quaternion{} : qbasis(j - 4);
            const Quaternion first = qsub(qmul(a, cc), qmul(conjugate(d), b));
            const Quaternion second = qadd(qmul(d, a), qmul(b, conjugate(cc)));
            const double coords[8] = {first.w,  first.x,  first.y,  first.z,
                                      second.w, second.x, second.y, second.z};
            for (int k = 0; k < n; ++k) c[(std::size_t(i) * n + j) * n + k] = coords[k];
        }
    return StructureTensor(n, std::move(c),
                           {"e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7"}, 0);
}

/// Tensor with identically zero multiplication (no unity).
inline StructureTensor zero_tensor(int n) {
    return StructureTensor(n, std::vector<double>(std::size_t(n) * n * n, 0.0));
}

// ---- named generator entry point ---------------------------------------------

/// Generator kinds accepted by the CLI.  twist-* kinds apply a seeded random
/// well-conditioned basis change and record it in provenance; `dim` is only
/// consulted by rn-componentwise.
inline StructureTensor generate_tensor(const std::string& kind, std::uint64_t seed, int dim = 3) {
    auto with_provenance = [&](StructureTensor t, bool seeded) {
        Provenance p;
        p.generator = kind;
        if (seeded) p.seed = seed;
        t.set_provenance(std::move(p));
        return t;
    };
    if (kind == "r") return with_provenance(structure_tensor_of(Label::R), false);
    if (kind == "c") return with_provenance(structure_tensor_of(Label::C), false);
    if (kind == "h") return with_provenance(structure_tensor_of(Label::H), false);
    if (kind == "m2r") return with_provenance(m2r_tensor(), false);
    if (kind == "dual") return with_provenance(dual_tensor(), false);
    if (kind == "rn-componentwise") return with_provenance(rn_componentwise_tensor(dim), false);
    if (kind == "r-plus-c") return with_provenance(r_plus_c_tensor(), false);
    if (kind == "octonion") {
        StructureTensor t = octonion_tensor();
        Provenance p;
        p.generator = kind;
        p.note = "Cayley-Dickson doubling of the quaternions: (a,b)(c,d) = (ac - conj(d)b, da + b conj(c)), e4 = (0,1)";
        t.set_provenance(std::move(p));
        return t;
    }
    if (kind == "zero") return with_provenance(zero_tensor(dim), false);
    if (kind == "twist-r" || kind == "twist-c" || kind == "twist-h") {
        const Label label = (kind == "twist-r") ? Label::R : (kind == "twist-c") ? Label::C : Label::H;
        SplitMix64 rng(seed);
        const StructureTensor base = structure_tensor_of(label);
        const Matrix P = random_well_conditioned(base.dim(), rng);
        StructureTensor t = change_basis(base, P);
        Provenance p;
        p.generator = kind;
        p.seed = seed;
        p.basis_change = P;
        t.set_provenance(std::move(p));
        return t;
    }
    throw std::invalid_argument("generate_tensor: unknown kind '" + kind + "'");
}

}  // namespace divalg
