#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vocdm/fresnel.hpp"
#include "vocdm/linalg.hpp"
#include "vocdm/verify.hpp"

using namespace vocdm;

TEST_CASE("dfnt size 1 collapses to [1]") {
    const CMat phi = dfnt_matrix(1);
    CHECK(phi(0, 0).real() == doctest::Approx(1.0));
    CHECK(phi(0, 0).imag() == doctest::Approx(0.0));
}

TEST_CASE("dfnt size 4 corner entry") {
    // (1/2) exp(-j pi/4) evaluated straight from the entry formula
    const CMat phi = dfnt_matrix(4);
    CHECK(phi(0, 0).real() == doctest::Approx(0.5 * std::cos(kPi / 4)));
    CHECK(phi(0, 0).imag() == doctest::Approx(-0.5 * std::sin(kPi / 4)));
}

TEST_CASE("dfnt is unitary") {
    for (int n : {2, 3, 5, 8, 12}) {
        const CMat phi = dfnt_matrix(n);
        CHECK((phi * phi.adjoint() - CMat::Identity(n, n)).norm() < 1e-12);
    }
}

TEST_CASE("cyclic shift basics") {
    CHECK((cyclic_shift_matrix(4, 0) - CMat::Identity(4, 4)).norm() == doctest::Approx(0.0));

    CVec x(3);
    x << Complex(1, 0), Complex(2, 0), Complex(3, 0);
    const CVec shifted = cyclic_shift_matrix(3, 1) * x;
    CHECK(shifted(0) == Complex(3, 0));
    CHECK(shifted(1) == Complex(1, 0));
    CHECK(shifted(2) == Complex(2, 0));
}

TEST_CASE("cyclic shift power reduces modulo k") {
    CHECK((cyclic_shift_matrix(5, 7) - cyclic_shift_matrix(5, 2)).norm() == doctest::Approx(0.0));
    CHECK((cyclic_shift_matrix(5, -1) - cyclic_shift_matrix(5, 4)).norm() == doctest::Approx(0.0));
}

TEST_CASE("cyclic shift matches the circulant definition") {
    // circ([0,1,0,...]) built entry-wise
    const int k = 6;
    CMat circ = CMat::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (((i - j) % k + k) % k == 1) circ(i, j) = 1.0;
        }
    }
    CHECK((cyclic_shift_matrix(k, 1) - circ).norm() == doctest::Approx(0.0));
}

TEST_CASE("phase diagonal values and periodicity") {
    CHECK((phase_diag_matrix(5, 0) - CMat::Identity(5, 5)).norm() == doctest::Approx(0.0));

    const CMat d = phase_diag_matrix(4, 1);
    CHECK(std::abs(d(0, 0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(d(1, 1) - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(d(2, 2) - Complex(-1, 0)) < 1e-15);
    CHECK(std::abs(d(3, 3) - Complex(0, -1)) < 1e-15);

    CHECK((phase_diag_matrix(6, 6) - CMat::Identity(6, 6)).norm() < 1e-15);
    CHECK((phase_diag_matrix(6, -2) - phase_diag_matrix(6, 4)).norm() < 1e-15);
}

TEST_CASE("leading phase block is the top corner of the full ramp") {
    const CMat full = phase_diag_matrix(12, 1);
    const CMat lam = leading_phase_block(4, 12);
    CHECK((lam - full.topLeftCorner(4, 4)).norm() == doctest::Approx(0.0));
}

TEST_CASE("alpha fixed values") {
    CHECK(std::abs(alpha(0, 7) - Complex(1, 0)) < 1e-15);
    // even N: exp(-j pi/N q^2)
    CHECK(std::abs(alpha(1, 6) - std::exp(Complex(0, -kPi / 6))) < 1e-15);
    // odd N with q = 1: the parity term cancels the phase entirely
    CHECK(std::abs(alpha(1, 3) - Complex(1, 0)) < 1e-15);
}

TEST_CASE("alpha has unit modulus and period N") {
    for (int n : {2, 3, 5, 8}) {
        for (long long q = -2 * n; q <= 2 * n; ++q) {
            CHECK(std::abs(std::abs(alpha(q, n)) - 1.0) < 1e-15);
            CHECK(std::abs(alpha(q, n) - alpha(q + n, n)) < 1e-12);
        }
    }
}

TEST_CASE("commutation identity holds across the whole grid") {
    CHECK(commutation_identity_residual(2, 12) <= 1e-10);
}

TEST_CASE("ramp factorization D_K = D_N kron Lambda_M") {
    for (auto [m, n] : {std::pair{3, 4}, std::pair{2, 6}, std::pair{5, 5}}) {
        const int k = m * n;
        const CMat lhs = phase_diag_matrix(k, 1);
        const CMat rhs = kron(phase_diag_matrix(n, 1), leading_phase_block(m, k));
        CHECK((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("idfnt columns are cyclic shifts of the first") {
    CHECK(idfnt_circulant_residual(2, 12) <= 1e-12);
}

TEST_CASE("modulation kron keeps the circulant structure") {
    CHECK(kron_circulant_residual(5, 3) <= 1e-12);
    CHECK(kron_circulant_residual(4, 4) <= 1e-12);
}
