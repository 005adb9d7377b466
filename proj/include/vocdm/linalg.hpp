#pragma once

// Dense complex linear algebra kernel shared by every other module: products,
// Kronecker products, Hermitian eigenvalues, numerical rank, PSD factorization.
// Thin shims over Eigen with the shape checks and tolerances the library
// relies on. All functions are pure.

#include <vector>

#include "vocdm/types.hpp"

namespace vocdm {

// Default relative tolerance for rank decisions: singular values below
// rel_tol * sigma_max count as zero. Sized for the double-precision SVD
// noise floor at block sizes up to a few hundred.
inline constexpr double kDefaultRankTol = 1e-9;

// a * b; throws std::invalid_argument naming both shapes on a mismatch.
CMat matmul(const CMat& a, const CMat& b);

// Kronecker product, (a.rows*b.rows) x (a.cols*b.cols).
CMat kron(const CMat& a, const CMat& b);

// Count of singular values exceeding rel_tol * sigma_max. Zero matrix -> 0.
int numerical_rank(const CMat& m, double rel_tol = kDefaultRankTol);

// Factor B of a Hermitian PSD matrix r with B * B^H = r, so that B applied
// to a whitened Gaussian vector produces covariance r. Throws on
// non-Hermitian or indefinite input.
CMat psd_factor(const CMat& r);

// Real eigenvalues of a Hermitian matrix, descending. Throws if the input
// is non-Hermitian beyond a 1e-10 asymmetry.
std::vector<double> eigvals_hermitian(const CMat& m);

}  // namespace vocdm
