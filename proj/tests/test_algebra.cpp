#include <catch2/catch_amalgamated.hpp>

#include "divalg/algebra.hpp"
#include "divalg/generate.hpp"
#include "divalg/quaternion.hpp"

using namespace divalg;

namespace {

Element elem(std::initializer_list<double> v) { return Element(v); }

Element random_elem(int n, SplitMix64& rng, double span = 2.0) {
    Element x(n);
    for (double& v : x) v = rng.symmetric() * span;
    return x;
}

const std::vector<StructureTensor>& fixture_list() {
    static const std::vector<StructureTensor> fixtures = [] {
        std::vector<StructureTensor> f;
        f.push_back(structure_tensor_of(Label::R));
        f.push_back(structure_tensor_of(Label::C));
        f.push_back(structure_tensor_of(Label::H));
        f.push_back(m2r_tensor());
        f.push_back(dual_tensor());
        f.push_back(rn_componentwise_tensor(3));
        f.push_back(r_plus_c_tensor());
        f.push_back(octonion_tensor());
        return f;
    }();
    return fixtures;
}

}  // namespace

TEST_CASE("multiply on the quaternion table") {
    const StructureTensor H = structure_tensor_of(Label::H);
    const Element one = unit_vec(4, 0), i = unit_vec(4, 1), j = unit_vec(4, 2), k = unit_vec(4, 3);

    CHECK(multiply(H, i, j) == k);
    CHECK(multiply(H, j, i) == scale(k, -1.0));
    // (1+i)(1+j) = 1 + i + j + k
    CHECK(multiply(H, add(one, i), add(one, j)) == elem({1, 1, 1, 1}));

    CHECK_THROWS_AS(multiply(H, elem({1, 0}), i), DimensionMismatch);
}

TEST_CASE("left and right multiplication operators") {
    const StructureTensor H = structure_tensor_of(Label::H);
    const Element unity = unit_vec(4, 0), i = unit_vec(4, 1);

    const Matrix Lu = left_mul_matrix(H, unity);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(Lu.at(a, b) == (a == b ? 1.0 : 0.0));

    const Matrix Lz = left_mul_matrix(H, Element(4, 0.0));
    CHECK(Lz.max_abs() == 0.0);

    // L_i maps 1 -> i, i -> -1, j -> k, k -> -j.
    const Matrix Li = left_mul_matrix(H, i);
    CHECK(matvec(Li, unit_vec(4, 0)) == i);
    CHECK(matvec(Li, unit_vec(4, 1)) == scale(unit_vec(4, 0), -1.0));
    CHECK(matvec(Li, unit_vec(4, 2)) == unit_vec(4, 3));
    CHECK(matvec(Li, unit_vec(4, 3)) == scale(unit_vec(4, 2), -1.0));

    const Matrix Ru = right_mul_matrix(H, unity);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(Ru.at(a, b) == (a == b ? 1.0 : 0.0));
    CHECK(right_mul_matrix(H, Element(4, 0.0)).max_abs() == 0.0);

    // R_i and L_i agree on 1, i and differ by sign on the j, k columns.
    const Matrix Ri = right_mul_matrix(H, i);
    CHECK(matvec(Ri, unit_vec(4, 0)) == i);
    CHECK(matvec(Ri, unit_vec(4, 2)) == scale(unit_vec(4, 3), -1.0));
    CHECK(matvec(Ri, unit_vec(4, 3)) == unit_vec(4, 2));

    // Definitional check on random elements: multiply(a, x) == L_a x.
    SplitMix64 rng(21);
    for (int t = 0; t < 50; ++t) {
        const Element a = random_elem(4, rng), x = random_elem(4, rng);
        const Element lhs = multiply(H, a, x);
        const Element rhs = matvec(left_mul_matrix(H, a), x);
        CHECK(norm(sub(lhs, rhs)) <= 1e-12 * (1.0 + norm(lhs)));
    }
}

TEST_CASE("left_mul_matrix is linear in its element") {
    const StructureTensor H = structure_tensor_of(Label::H);
    SplitMix64 rng(22);
    for (int t = 0; t < 50; ++t) {
        const Element a = random_elem(4, rng), b = random_elem(4, rng);
        const double lam = rng.symmetric() * 3.0;
        const Matrix Lab = left_mul_matrix(H, add(a, b));
        const Matrix La = left_mul_matrix(H, a);
        const Matrix Lb = left_mul_matrix(H, b);
        const Matrix Ls = left_mul_matrix(H, scale(a, lam));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                CHECK_THAT(Lab.at(r, c), Catch::Matchers::WithinAbs(La.at(r, c) + Lb.at(r, c), 1e-12));
                CHECK_THAT(Ls.at(r, c), Catch::Matchers::WithinAbs(lam * La.at(r, c), 1e-12));
            }
    }
}

TEST_CASE("find_unity") {
    const Tolerance tol;
    const StructureTensor H = structure_tensor_of(Label::H);
    auto u = find_unity(H, tol);
    REQUIRE(u);
    CHECK(*u == unit_vec(4, 0));

    CHECK_FALSE(find_unity(zero_tensor(2), tol));

    // Permute the quaternion basis so the unity lands on slot 2 (0-based).
    Matrix P(4, 4);
    P.at(0, 2) = 1.0;  // new f2 = old e0
    P.at(1, 0) = 1.0;  // new f0 = old e1
    P.at(2, 1) = 1.0;  // new f1 = old e2
    P.at(3, 3) = 1.0;  // new f3 = old e3
    const StructureTensor Hp = change_basis(H, P);
    auto up = find_unity(Hp, tol);
    REQUIRE(up);
    CHECK(norm(sub(*up, unit_vec(4, 2))) <= 1e-9);
}

TEST_CASE("check_axioms") {
    const Tolerance tol;
    auto h = check_axioms(structure_tensor_of(Label::H), tol);
    CHECK(h.has_unity);
    CHECK(h.associative);
    CHECK(h.worst_assoc_residual == 0.0);
    CHECK_FALSE(h.witness_triple);

    auto o = check_axioms(octonion_tensor(), tol);
    CHECK(o.has_unity);
    CHECK_FALSE(o.associative);
    REQUIRE(o.witness_triple);
    CHECK(o.worst_assoc_residual >= 1.0);

    auto d = check_axioms(dual_tensor(), tol);
    CHECK(d.has_unity);
    CHECK(d.associative);

    auto z = check_axioms(zero_tensor(2), tol);
    CHECK_FALSE(z.has_unity);
    CHECK(z.associative);
}

TEST_CASE("octonion witness triple reproduces its residual") {
    const StructureTensor O = octonion_tensor();
    auto rep = check_axioms(O);
    REQUIRE(rep.witness_triple);
    const auto [i, j, k] = *rep.witness_triple;
    const Element lhs = multiply(O, multiply(O, unit_vec(8, i), unit_vec(8, j)), unit_vec(8, k));
    const Element rhs = multiply(O, unit_vec(8, i), multiply(O, unit_vec(8, j), unit_vec(8, k)));
    CHECK_THAT(norm(sub(lhs, rhs)), Catch::Matchers::WithinAbs(rep.worst_assoc_residual, 1e-12));
    // The Cayley-Dickson table breaks associativity at (e1 e2) e4 != e1 (e2 e4).
    const Element l = multiply(O, multiply(O, unit_vec(8, 1), unit_vec(8, 2)), unit_vec(8, 4));
    const Element r = multiply(O, unit_vec(8, 1), multiply(O, unit_vec(8, 2), unit_vec(8, 4)));
    CHECK(norm(sub(l, r)) == 2.0);
}

TEST_CASE("anticommutator examples and identities") {
    const StructureTensor H = structure_tensor_of(Label::H);
    const Element i = unit_vec(4, 1), j = unit_vec(4, 2), k = unit_vec(4, 3);

    CHECK(norm(anticommutator(H, i, j)) == 0.0);

    SplitMix64 rng(23);
    for (int t = 0; t < 50; ++t) {
        const Element x = random_elem(4, rng);
        const Element sq = multiply(H, x, x);
        CHECK(norm(sub(anticommutator(H, x, x), scale(sq, 2.0))) <= 1e-12 * (1.0 + norm(sq)));
    }

    // (i + 2j) o (3i - k) = -6.
    const Element a = add(i, scale(j, 2.0));
    const Element b = sub(scale(i, 3.0), k);
    CHECK(anticommutator(H, a, b) == elem({-6, 0, 0, 0}));
}

TEST_CASE("anticommutator identity x o y = (x+y)^2 - x^2 - y^2 across fixtures") {
    SplitMix64 rng(24);
    for (const auto& T : fixture_list()) {
        for (int t = 0; t < 500; ++t) {
            const Element x = random_elem(T.dim(), rng), y = random_elem(T.dim(), rng);
            const Element lhs = anticommutator(T, x, y);
            const Element sum = add(x, y);
            const Element rhs = sub(sub(multiply(T, sum, sum), multiply(T, x, x)), multiply(T, y, y));
            const double bound = 1e-9 * (1.0 + norm(x) + norm(y)) * (1.0 + norm(x) + norm(y));
            CHECK(norm(sub(lhs, rhs)) <= bound);
        }
    }
}

TEST_CASE("anticommutator symmetry is exact") {
    SplitMix64 rng(25);
    for (const auto& T : fixture_list()) {
        for (int t = 0; t < 50; ++t) {
            const Element x = random_elem(T.dim(), rng), y = random_elem(T.dim(), rng);
            const Element ab = anticommutator(T, x, y);
            const Element ba = anticommutator(T, y, x);
            for (int c = 0; c < T.dim(); ++c) CHECK(std::fabs(ab[c] - ba[c]) <= 1e-12);
        }
    }
}

TEST_CASE("minimal_polynomial examples") {
    const Tolerance tol;
    const StructureTensor H = structure_tensor_of(Label::H);
    const Element unity = unit_vec(4, 0), i = unit_vec(4, 1);

    auto m1 = minimal_polynomial(H, unity, tol);
    REQUIRE(m1.degree() == 1);
    CHECK_THAT(m1.coeffs[0], Catch::Matchers::WithinAbs(-1.0, 1e-12));

    auto m2 = minimal_polynomial(H, i, tol);
    REQUIRE(m2.degree() == 2);
    CHECK_THAT(m2.coeffs[0], Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(m2.coeffs[1], Catch::Matchers::WithinAbs(0.0, 1e-12));

    // x = 3 + 4i -> X^2 - 6X + 25.
    auto m3 = minimal_polynomial(H, elem({3, 4, 0, 0}), tol);
    REQUIRE(m3.degree() == 2);
    CHECK_THAT(m3.coeffs[0], Catch::Matchers::WithinAbs(25.0, 1e-9));
    CHECK_THAT(m3.coeffs[1], Catch::Matchers::WithinAbs(-6.0, 1e-9));

    CHECK_THROWS_AS(minimal_polynomial(zero_tensor(2), elem({0, 1}), tol), NoUnityError);
}

TEST_CASE("minimal polynomials annihilate their element and have degree <= 2 on H") {
    const StructureTensor H = structure_tensor_of(Label::H);
    const Element unity = unit_vec(4, 0);
    SplitMix64 rng(26);
    for (int t = 0; t < 200; ++t) {
        const Element x = random_elem(4, rng, 3.0);
        const RealPolynomial m = minimal_polynomial(H, x);
        CHECK(m.degree() <= 2);
        const Element at = poly_eval_element(H, m, x, unity);
        CHECK(norm(at) <= 1e-8 * std::pow(1.0 + norm(x), double(m.degree())));
    }
}

TEST_CASE("scalar_part_test") {
    const Tolerance tol;
    const StructureTensor H = structure_tensor_of(Label::H);
    const Element i = unit_vec(4, 1);

    auto s1 = scalar_part_test(H, scale(unit_vec(4, 0), 5.0), tol);
    REQUIRE(s1);
    CHECK_THAT(*s1, Catch::Matchers::WithinAbs(5.0, 1e-12));

    CHECK_FALSE(scalar_part_test(H, i, tol));

    auto s3 = scalar_part_test(H, multiply(H, i, i), tol);
    REQUIRE(s3);
    CHECK_THAT(*s3, Catch::Matchers::WithinAbs(-1.0, 1e-12));
}

TEST_CASE("change_basis") {
    const Tolerance tol;
    const StructureTensor H = structure_tensor_of(Label::H);

    // Identity change is a no-op.
    const StructureTensor same = change_basis(H, Matrix::identity(4), tol);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) CHECK_THAT(same.c(i, j, k), Catch::Matchers::WithinAbs(H.c(i, j, k), 1e-12));

    // Singular matrix rejected.
    Matrix S(4, 4);
    CHECK_THROWS_AS(change_basis(H, S, tol), SingularBasis);

    // A permutation relabels the constants: c'[i][j][k] = c[s(i)][s(j)][s(k)].
    const int perm[4] = {2, 0, 3, 1};
    Matrix Q(4, 4);
    for (int i = 0; i < 4; ++i) Q.at(perm[i], i) = 1.0;
    const StructureTensor Hq = change_basis(H, Q, tol);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                CHECK_THAT(Hq.c(i, j, k), Catch::Matchers::WithinAbs(H.c(perm[i], perm[j], perm[k]), 1e-12));

    // Multiplication transports: Pinv(mult_T(a,b)) = mult_T'(Pinv a, Pinv b).
    SplitMix64 rng(27);
    for (int t = 0; t < 25; ++t) {
        const Matrix P = random_well_conditioned(4, rng);
        const Matrix Pinv = invert(P);
        const StructureTensor Tw = change_basis(H, P, tol);
        const Element a = random_elem(4, rng), b = random_elem(4, rng);
        const Element lhs = matvec(Pinv, multiply(H, a, b));
        const Element rhs = multiply(Tw, matvec(Pinv, a), matvec(Pinv, b));
        CHECK(norm(sub(lhs, rhs)) <= 1e-8 * (1.0 + norm(lhs)));
    }
}

TEST_CASE("change_basis round trip") {
    const StructureTensor H = structure_tensor_of(Label::H);
    SplitMix64 rng(28);
    for (int t = 0; t < 25; ++t) {
        const Matrix P = random_well_conditioned(4, rng);
        const StructureTensor back = change_basis(change_basis(H, P), invert(P));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    CHECK_THAT(back.c(i, j, k), Catch::Matchers::WithinAbs(H.c(i, j, k), 1e-8));
    }
}

TEST_CASE("normalize_unity moves a generic unity to slot 0") {
    const Tolerance tol;
    const StructureTensor T = generate_tensor("twist-h", 7);
    auto norm_pair = normalize_unity(T, tol);
    REQUIRE(norm_pair);
    const auto& [N, P] = *norm_pair;
    CHECK(N.unity_index() == std::optional<int>(0));
    auto u = find_unity(N, tol);
    REQUIRE(u);
    CHECK(norm(sub(*u, unit_vec(4, 0))) == 0.0);
    CHECK_FALSE(normalize_unity(zero_tensor(3), tol));
}

TEST_CASE("tensor construction rejects malformed input") {
    CHECK_THROWS_AS(StructureTensor(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(StructureTensor(2, std::vector<double>(7, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(StructureTensor(65, std::vector<double>(65 * 65 * 65, 0.0)), std::invalid_argument);
    std::vector<double> bad(8, 0.0);
    bad[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(StructureTensor(2, bad), std::invalid_argument);
    // unity_index whose slices are not exact deltas.
    CHECK_THROWS_AS(StructureTensor(2, std::vector<double>(8, 0.0), {}, 0), std::invalid_argument);
}
