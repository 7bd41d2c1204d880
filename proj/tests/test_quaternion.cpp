#include <catch2/catch_amalgamated.hpp>

#include "divalg/generate.hpp"
#include "divalg/quaternion.hpp"

using namespace divalg;

namespace {

const Quaternion kOne{1, 0, 0, 0};
const Quaternion kI{0, 1, 0, 0};
const Quaternion kJ{0, 0, 1, 0};
const Quaternion kK{0, 0, 0, 1};

bool qeq(const Quaternion& a, const Quaternion& b, double tol = 0.0) {
    return std::fabs(a.w - b.w) <= tol && std::fabs(a.x - b.x) <= tol && std::fabs(a.y - b.y) <= tol &&
           std::fabs(a.z - b.z) <= tol;
}

Quaternion random_q(SplitMix64& rng) { return {rng.symmetric() * 2, rng.symmetric() * 2, rng.symmetric() * 2, rng.symmetric() * 2}; }

}  // namespace

TEST_CASE("defining products") {
    CHECK(qeq(qmul(kI, kJ), kK));
    CHECK(qeq(qmul(kJ, kI), qscale(kK, -1.0)));
    CHECK(qeq(qmul(kK, kI), kJ));
    CHECK(qeq(qmul(kJ, kK), kI));
    CHECK(qeq(qmul(kI, kI), qscale(kOne, -1.0)));
    // (1+i)(1-i) = 2
    CHECK(qeq(qmul({1, 1, 0, 0}, {1, -1, 0, 0}), {2, 0, 0, 0}));
}

TEST_CASE("conjugate and norm") {
    CHECK(qeq(conjugate({1, 1, 1, 1}), {1, -1, -1, -1}));
    CHECK(qeq(conjugate({5, 0, 0, 0}), {5, 0, 0, 0}));
    CHECK(norm_sq({1, 1, 1, 1}) == 4.0);
    CHECK(norm_sq({0, 0, 0, 0}) == 0.0);
    CHECK(norm_sq({3, 4, 0, 0}) == 25.0);

    SplitMix64 rng(11);
    for (int t = 0; t < 100; ++t) {
        Quaternion a = random_q(rng);
        CHECK(qeq(conjugate(conjugate(a)), a));
    }
}

TEST_CASE("inverse") {
    auto ii = inverse(kI);
    REQUIRE(ii);
    CHECK(qeq(*ii, qscale(kI, -1.0)));
    auto half = inverse({2, 0, 0, 0});
    REQUIRE(half);
    CHECK(qeq(*half, {0.5, 0, 0, 0}));
    CHECK_FALSE(inverse({0, 0, 0, 0}));

    SplitMix64 rng(12);
    for (int t = 0; t < 100; ++t) {
        Quaternion a = random_q(rng);
        if (norm_sq(a) < 1e-3) continue;
        auto inv = inverse(a);
        REQUIRE(inv);
        CHECK(qeq(qmul(a, *inv), kOne, 1e-12));
    }
}

TEST_CASE("norm multiplicativity") {
    SplitMix64 rng(13);
    for (int t = 0; t < 1000; ++t) {
        Quaternion a = random_q(rng), b = random_q(rng);
        const double lhs = norm_sq(qmul(a, b));
        const double rhs = norm_sq(a) * norm_sq(b);
        CHECK(std::fabs(lhs - rhs) <= 1e-10 * (1.0 + norm_sq(a)) * (1.0 + norm_sq(b)));
    }
}

TEST_CASE("a times conjugate(a) is purely real") {
    SplitMix64 rng(14);
    for (int t = 0; t < 1000; ++t) {
        Quaternion a = random_q(rng);
        Quaternion p = qmul(a, conjugate(a));
        CHECK(std::fabs(p.x) <= 1e-12);
        CHECK(std::fabs(p.y) <= 1e-12);
        CHECK(std::fabs(p.z) <= 1e-12);
        CHECK_THAT(p.w, Catch::Matchers::WithinAbs(norm_sq(a), 1e-12));
    }
}

TEST_CASE("structure tensor of H matches qmul on all 16 basis pairs exactly") {
    const StructureTensor H = structure_tensor_of(Label::H);
    const Quaternion basis[4] = {kOne, kI, kJ, kK};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const Element prod = multiply(H, unit_vec(4, a), unit_vec(4, b));
            const Quaternion q = qmul(basis[a], basis[b]);
            CHECK(prod[0] == q.w);
            CHECK(prod[1] == q.x);
            CHECK(prod[2] == q.y);
            CHECK(prod[3] == q.z);
        }
}

TEST_CASE("structure tensors of R and C") {
    const StructureTensor R = structure_tensor_of(Label::R);
    CHECK(R.dim() == 1);
    CHECK(R.c(0, 0, 0) == 1.0);

    const StructureTensor C = structure_tensor_of(Label::C);
    CHECK(C.dim() == 2);
    const Element i2 = multiply(C, unit_vec(2, 1), unit_vec(2, 1));
    CHECK(i2[0] == -1.0);
    CHECK(i2[1] == 0.0);
}

TEST_CASE("anticommutation of the imaginary units is exact") {
    auto anti = [](const Quaternion& a, const Quaternion& b) {
        Quaternion s = qadd(qmul(a, b), qmul(b, a));
        return s.w == 0.0 && s.x == 0.0 && s.y == 0.0 && s.z == 0.0;
    };
    CHECK(anti(kI, kJ));
    CHECK(anti(kJ, kK));
    CHECK(anti(kK, kI));
}
