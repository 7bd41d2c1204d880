#include <catch2/catch_amalgamated.hpp>

#include "divalg/generate.hpp"
#include "divalg/linalg.hpp"

using namespace divalg;

namespace {

Matrix mat(int r, int c, std::initializer_list<double> entries) {
    Matrix M(r, c);
    int i = 0;
    for (double v : entries) M.a[i++] = v;
    return M;
}

Matrix random_matrix(int n, SplitMix64& rng) {
    Matrix M(n, n);
    for (double& v : M.a) v = rng.symmetric();
    return M;
}

}  // namespace

TEST_CASE("kernel_basis examples") {
    const Tolerance tol;
    Matrix zero2(2, 2);
    auto k1 = kernel_basis(zero2, tol);
    REQUIRE(k1.size() == 2);
    CHECK_THAT(dot(k1[0], k1[1]), Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(norm(k1[0]), Catch::Matchers::WithinAbs(1.0, 1e-12));

    CHECK(kernel_basis(Matrix::identity(2), tol).empty());

    auto k2 = kernel_basis(mat(2, 2, {1, 1, 1, 1}), tol);
    REQUIRE(k2.size() == 1);
    // Direction (1,-1)/sqrt(2), sign-free.
    Vec expect = {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)};
    CHECK_THAT(std::fabs(dot(k2[0], expect)), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("kernel vectors satisfy the residual bound for random matrices") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + int(rng.next() % 5);
        Matrix M = random_matrix(n, rng);
        // Force rank deficiency: last row = sum of the others.
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i + 1 < n; ++i) s += M.at(i, j);
            M.at(n - 1, j) = s;
        }
        auto kern = kernel_basis(M);
        REQUIRE_FALSE(kern.empty());
        for (const auto& v : kern) {
            CHECK(norm(matvec(M, v)) <= 1e-9 * (1.0 + M.max_abs()));
            CHECK_THAT(norm(v), Catch::Matchers::WithinAbs(1.0, 1e-12));
        }
    }
}

TEST_CASE("solve_linear examples") {
    const Tolerance tol;
    auto s1 = solve_linear(Matrix::identity(2), {3, 4}, tol);
    REQUIRE(s1);
    CHECK_THAT((*s1)[0], Catch::Matchers::WithinAbs(3.0, 1e-12));
    CHECK_THAT((*s1)[1], Catch::Matchers::WithinAbs(4.0, 1e-12));

    CHECK_FALSE(solve_linear(mat(2, 2, {1, 0, 0, 0}), {1, 1}, tol));

    auto s3 = solve_linear(mat(2, 2, {2, 0, 0, 4}), {2, 8}, tol);
    REQUIRE(s3);
    CHECK_THAT((*s3)[0], Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT((*s3)[1], Catch::Matchers::WithinAbs(2.0, 1e-12));
}

TEST_CASE("characteristic_polynomial examples") {
    auto p1 = characteristic_polynomial(mat(2, 2, {2, 0, 0, 3}));
    REQUIRE(p1.degree() == 2);
    CHECK_THAT(p1.coeffs[0], Catch::Matchers::WithinAbs(6.0, 1e-12));
    CHECK_THAT(p1.coeffs[1], Catch::Matchers::WithinAbs(-5.0, 1e-12));
    CHECK_THAT(p1.coeffs[2], Catch::Matchers::WithinAbs(1.0, 1e-12));

    auto p2 = characteristic_polynomial(mat(1, 1, {7}));
    REQUIRE(p2.degree() == 1);
    CHECK_THAT(p2.coeffs[0], Catch::Matchers::WithinAbs(-7.0, 1e-12));

    auto p3 = characteristic_polynomial(mat(2, 2, {0, -1, 1, 0}));
    REQUIRE(p3.degree() == 2);
    CHECK_THAT(p3.coeffs[0], Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(p3.coeffs[1], Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("real_eigenpairs examples") {
    const Tolerance tol;
    auto e1 = real_eigenpairs(Matrix::identity(3), tol);
    REQUIRE_FALSE(e1.empty());
    bool unit_one = false;
    for (const auto& [l, v] : e1)
        if (std::fabs(l - 1.0) < 1e-9 && std::fabs(norm(v) - 1.0) < 1e-9) unit_one = true;
    CHECK(unit_one);

    CHECK(real_eigenpairs(mat(2, 2, {0, -1, 1, 0}), tol).empty());

    auto e3 = real_eigenpairs(mat(3, 3, {0, 0, 0, 0, 1, 0, 0, 0, 0}), tol);
    bool saw0 = false, saw1 = false;
    for (const auto& [l, v] : e3) {
        if (std::fabs(l) < 1e-9) saw0 = true;
        if (std::fabs(l - 1.0) < 1e-9) {
            saw1 = true;
            CHECK_THAT(std::fabs(v[1]), Catch::Matchers::WithinAbs(1.0, 1e-9));
        }
    }
    CHECK((saw0 && saw1));
}

TEST_CASE("odd-dimensional matrices always have a real eigenpair") {
    SplitMix64 rng(31);
    for (int dim : {3, 5, 7}) {
        for (int trial = 0; trial < 100; ++trial) {
            Matrix M = random_matrix(dim, rng);
            auto pairs = real_eigenpairs(M);
            REQUIRE_FALSE(pairs.empty());
            for (const auto& [l, v] : pairs) {
                CHECK(norm(sub(matvec(M, v), scale(v, l))) <= 1e-8 * (1.0 + M.max_abs()));
                CHECK_THAT(norm(v), Catch::Matchers::WithinAbs(1.0, 1e-9));
            }
        }
    }
}

TEST_CASE("orthonormal_complement_unit examples") {
    const Tolerance tol;
    auto e1 = orthonormal_complement_unit({Vec{1, 0, 0}}, Matrix::identity(3), 3, tol);
    REQUIRE(e1);
    CHECK(std::fabs((*e1)[0]) < 1e-12);
    CHECK_THAT(norm(*e1), Catch::Matchers::WithinAbs(1.0, 1e-12));

    auto e2 = orthonormal_complement_unit({}, mat(1, 1, {4}), 1, tol);
    REQUIRE(e2);
    CHECK_THAT((*e2)[0], Catch::Matchers::WithinAbs(0.5, 1e-12));

    auto e3 = orthonormal_complement_unit({Vec{1, 1, 0}, Vec{0, 0, 1}}, Matrix::identity(3), 3, tol);
    REQUIRE(e3);
    Vec expect = {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
    CHECK_THAT(std::fabs(dot(*e3, expect)), Catch::Matchers::WithinAbs(1.0, 1e-12));

    // U spanning the space: no complement.
    CHECK_FALSE(orthonormal_complement_unit({Vec{1, 0}, Vec{0, 1}}, Matrix::identity(2), 2, tol));
}

TEST_CASE("complement output passes a direct Gram recomputation") {
    SplitMix64 rng(55);
    for (int trial = 0; trial < 60; ++trial) {
        const int dim = 2 + int(rng.next() % 7);
        // Random positive definite gram: A^T A + I/10.
        Matrix A(dim, dim);
        for (double& v : A.a) v = rng.symmetric();
        Matrix G = transpose(A) * A;
        for (int i = 0; i < dim; ++i) G.at(i, i) += 0.1;

        const int k = int(rng.next() % std::uint64_t(dim));  // 0 .. dim-1 vectors
        std::vector<Vec> U;
        for (int i = 0; i < k; ++i) {
            Vec u(dim);
            for (double& v : u) v = rng.symmetric();
            U.push_back(u);
        }
        auto e = orthonormal_complement_unit(U, G, dim);
        REQUIRE(e);
        CHECK_THAT(gram_dot(G, *e, *e), Catch::Matchers::WithinAbs(1.0, 1e-9));
        for (const auto& u : U) CHECK(std::fabs(gram_dot(G, *e, u)) <= 1e-9 * (1.0 + norm(u)));
    }
}

TEST_CASE("invert round trip and singular rejection") {
    SplitMix64 rng(4);
    Matrix M = random_matrix(4, rng);
    M.at(0, 0) += 2.0;  // keep it comfortably nonsingular
    Matrix I = M * invert(M);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK_THAT(I.at(i, j), Catch::Matchers::WithinAbs(i == j ? 1.0 : 0.0, 1e-10));

    Matrix S(2, 2);
    S.at(0, 0) = 1.0;
    S.at(0, 1) = 2.0;
    S.at(1, 0) = 2.0;
    S.at(1, 1) = 4.0;
    CHECK_THROWS_AS(invert(S), SingularBasis);
}
