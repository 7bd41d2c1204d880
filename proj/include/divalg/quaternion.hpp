#pragma once

#include <optional>
#include <string>

#include "divalg/algebra.hpp"

namespace divalg {

/// The three canonical targets of the classification.
enum class Label { R, C, H };

inline int label_dim(Label l) { return l == Label::R ? 1 : (l == Label::C ? 2 : 4); }

inline std::string label_name(Label l) { return l == Label::R ? "R" : (l == Label::C ? "C" : "H"); }

/// Reference arithmetic over the basis {1, i, j, k}.  Plain coordinates, no
/// implicit normalization.
struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;
};

inline Quaternion qadd(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

inline Quaternion qsub(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}

inline Quaternion qscale(const Quaternion& a, double s) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }

/// Hamilton product: bilinear extension of i^2 = j^2 = k^2 = -1,
/// ij = -ji = k, jk = -kj = i, ki = -ik = j.
inline Quaternion qmul(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quaternion conjugate(const Quaternion& a) { return {a.w, -a.x, -a.y, -a.z}; }

inline double norm_sq(const Quaternion& a) { return a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z; }

inline double qnorm(const Quaternion& a) { return std::sqrt(norm_sq(a)); }

/// Multiplicative inverse; nullopt for zero.
inline std::optional<Quaternion> inverse(const Quaternion& a) {
    const double n2 = norm_sq(a);
    if (n2 == 0.0) return std::nullopt;
    return qscale(conjugate(a), 1.0 / n2);
}

/// Exact integer structure tensors of the canonical algebras, unity at
/// slot 0.
inline StructureTensor structure_tensor_of(Label label) {
    if (label == Label::R) {
        return StructureTensor(1, {1.0}, {"1"}, 0);
    }
    if (label == Label::C) {
        std::vector<double> c(8, 0.0);
        auto set = [&](int i, int j, int k, double v) { c[(std::size_t(i) * 2 + j) * 2 + k] = v; };
        set(0, 0, 0, 1.0);
        set(0, 1, 1, 1.0);
        set(1, 0, 1, 1.0);
        set(1, 1, 0, -1.0);
        return StructureTensor(2, std::move(c), {"1", "i"}, 0);
    }
    std::vector<double> c(64, 0.0);
    auto set = [&](int i, int j, int k, double v) { c[(std::size_t(i) * 4 + j) * 4 + k] = v; };
    // Row/column 0 is unity.
    for (int m = 0; m < 4; ++m) {
        set(0, m, m, 1.0);
        if (m != 0) set(m, 0, m, 1.0);
    }
    set(1, 1, 0, -1.0);
    set(2, 2, 0, -1.0);
    set(3, 3, 0, -1.0);
    set(1, 2, 3, 1.0);
    set(2, 1, 3, -1.0);
    set(2, 3, 1, 1.0);
    set(3, 2, 1, -1.0);
    set(3, 1, 2, 1.0);
    set(1, 3, 2, -1.0);
    return StructureTensor(4, std::move(c), {"1", "i", "j", "k"}, 0);
}

/// Embed a coordinate vector of a canonical algebra into quaternion
/// arithmetic (unused coordinates zero).
inline Quaternion embed(Label label, const Vec& v) {
    Quaternion q;
    q.w = v[0];
    if (label != Label::R) q.x = v[1];
    if (label == Label::H) {
        q.y = v[2];
        q.z = v[3];
    }
    return q;
}

}  // namespace divalg
