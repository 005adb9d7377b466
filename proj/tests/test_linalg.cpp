#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vocdm/linalg.hpp"

using namespace vocdm;
using testutil::kron_oracle;
using testutil::matmul_oracle;
using testutil::random_matrix;

TEST_CASE("matmul identity and annihilator") {
    const CMat x = random_matrix(3, 3, 11);
    CHECK((matmul(CMat::Identity(3, 3), x) - x).norm() == doctest::Approx(0.0));
    CHECK(matmul(x, CMat::Zero(3, 2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("matmul matches the triple-loop oracle") {
    const CMat a = random_matrix(4, 4, 1);
    const CMat b = random_matrix(4, 4, 2);
    CHECK((matmul(a, b) - matmul_oracle(a, b)).norm() < 1e-12);
}

TEST_CASE("matmul rejects mismatched shapes with both named") {
    const CMat a = random_matrix(2, 3, 3);
    const CMat b = random_matrix(4, 2, 4);
    CHECK_THROWS_WITH_AS(matmul(a, b), doctest::Contains("2x3"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(matmul(a, b), doctest::Contains("4x2"), std::invalid_argument);
}

TEST_CASE("kron identity blocks") {
    const CMat k = kron(CMat::Identity(2, 2), CMat::Identity(3, 3));
    CHECK((k - CMat::Identity(6, 6)).norm() == doctest::Approx(0.0));
}

TEST_CASE("kron of a swap with identity is the 4x4 block permutation") {
    CMat swap(2, 2);
    swap << 0, 1, 1, 0;
    const CMat got = kron(swap, CMat::Identity(2, 2));
    CHECK((got - kron_oracle(swap, CMat::Identity(2, 2))).norm() == doctest::Approx(0.0));
    // blocks land where the definition says
    CHECK(got(0, 2) == Complex(1.0, 0.0));
    CHECK(got(3, 1) == Complex(1.0, 0.0));
    CHECK(got(0, 0) == Complex(0.0, 0.0));
}

TEST_CASE("kron mixed-product identity on random blocks") {
    const CMat a = random_matrix(2, 2, 5), b = random_matrix(2, 2, 6);
    const CMat c = random_matrix(2, 2, 7), d = random_matrix(2, 2, 8);
    const CMat lhs = kron(a, b) * kron(c, d);
    const CMat rhs = kron(matmul(a, c), matmul(b, d));
    CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("numerical rank basics") {
    CHECK(numerical_rank(CMat::Identity(7, 7)) == 7);
    CHECK(numerical_rank(CMat::Zero(4, 4)) == 0);

    const CVec u = testutil::random_vector(5, 21);
    const CVec v = testutil::random_vector(5, 22);
    CHECK(numerical_rank(u * v.adjoint()) == 1);
}

TEST_CASE("numerical rank of a nearly singular 2x2") {
    // Singular values from the closed form: with delta = 1e-15,
    // sigma1 ~= 2 and sigma2 = |det|/sigma1 ~= 5e-16, far below 1e-9*sigma1.
    CMat m(2, 2);
    m << 1.0, 1.0, 1.0, 1.0 + 1e-15;
    CHECK(numerical_rank(m, 1e-9) == 1);
}

TEST_CASE("numerical rank is invariant under unitary factors") {
    // well separated spectrum
    CMat d = CMat::Zero(5, 5);
    d.diagonal() << 4.0, 3.0, 2.0, 1.0, 0.0;
    Eigen::HouseholderQR<CMat> qr(random_matrix(5, 5, 31));
    const CMat u = qr.householderQ();
    CHECK(numerical_rank(d) == 4);
    CHECK(numerical_rank(u * d) == 4);
    CHECK(numerical_rank(d * u) == 4);
    CHECK(numerical_rank(u * d * u.adjoint()) == 4);
}

TEST_CASE("numerical rank rejects nonpositive tolerance") {
    CHECK_THROWS_AS(numerical_rank(CMat::Identity(2, 2), 0.0), std::invalid_argument);
}

TEST_CASE("psd_factor identity and diagonal cases") {
    const CMat b1 = psd_factor(CMat::Identity(4, 4));
    CHECK((b1 * b1.adjoint() - CMat::Identity(4, 4)).norm() < 1e-12);

    CMat d = CMat::Zero(2, 2);
    d.diagonal() << 4.0, 1.0;
    const CMat b2 = psd_factor(d);
    CHECK((b2 * b2.adjoint() - d).norm() < 1e-12);
}

TEST_CASE("psd_factor reconstructs a random PSD matrix") {
    const CMat a = random_matrix(6, 6, 41);
    const CMat r = a * a.adjoint();
    const CMat b = psd_factor(r);
    CHECK((b * b.adjoint() - r).norm() <= 1e-10 * r.norm());
}

TEST_CASE("psd_factor rejects non-Hermitian and indefinite inputs") {
    CHECK_THROWS_AS(psd_factor(random_matrix(3, 3, 51)), std::invalid_argument);
    CMat ind = CMat::Zero(2, 2);
    ind.diagonal() << 1.0, -1.0;
    CHECK_THROWS_AS(psd_factor(ind), std::invalid_argument);
}

TEST_CASE("hermitian eigenvalues on fixed spectra") {
    const auto id = eigvals_hermitian(CMat::Identity(4, 4));
    for (double v : id) CHECK(v == doctest::Approx(1.0));

    CMat d = CMat::Zero(3, 3);
    d.diagonal() << 1.0, 3.0, 0.0;
    const auto vals = eigvals_hermitian(d);
    CHECK(vals[0] == doctest::Approx(3.0));
    CHECK(vals[1] == doctest::Approx(1.0));
    CHECK(vals[2] == doctest::Approx(0.0));
}

TEST_CASE("hermitian eigenvalues match trace and determinant") {
    const CMat a = random_matrix(5, 5, 61);
    const CMat h = a + a.adjoint();
    const auto vals = eigvals_hermitian(h);
    double sum = 0.0, prod = 1.0;
    for (double v : vals) {
        sum += v;
        prod *= v;
    }
    CHECK(sum == doctest::Approx(h.trace().real()).epsilon(1e-9));
    CHECK(prod == doctest::Approx(h.determinant().real()).epsilon(1e-9));
}

TEST_CASE("eigvals_hermitian rejects asymmetry beyond tolerance") {
    CMat m = CMat::Identity(3, 3);
    m(0, 1) = Complex(0.0, 1e-6);
    CHECK_THROWS_AS(eigvals_hermitian(m), std::invalid_argument);
}
