#pragma once

// Discrete Fresnel transform and the structured matrices it interacts with:
// the phase-ramp diagonal D_K, the cyclic shift Pi_K, and the leading phase
// block Lambda_M. The key algebraic fact, validated by the verify suite, is
// the commutation identity
//
//   Phi_N D_N^q Phi_N^H = alpha_q D_N^q Pi_N^q,
//
// which is what turns a doubly dispersive channel into a sparse banded
// matrix after chirp demodulation.

#include "vocdm/types.hpp"

namespace vocdm {

// Size-n DFnT matrix, unitary and circulant:
//   [Phi_n]_{m,k} = exp(-j*pi/4 + j*(pi/n)*(m - k + mod(n,2)/2)^2) / sqrt(n).
CMat dfnt_matrix(int n);

// Adjoint of dfnt_matrix (the modulation kernel).
CMat idfnt_matrix(int n);

// Pi_k^power with Pi_k = circ([0,1,0,...,0]^T); applying it delays a vector
// by `power` positions circularly. The power is reduced mod k, negatives
// allowed; power 0 gives the identity.
CMat cyclic_shift_matrix(int k, long long power = 1);

// D_k^power = diag(exp(j*2*pi*power*i/k), i=0..k-1), power reduced mod k
// before exponentiation to avoid phase drift from large arguments.
CMat phase_diag_matrix(int k, long long power = 1);

// Lambda_m: the leading m x m diagonal block of D_k. Together with D_n these
// factor the full ramp: D_{n*m} = D_n (x) Lambda_m.
CMat leading_phase_block(int m, int k);

// alpha_q = exp(j*(pi/n)*q*(mod(n,2) - q)), the unit-modulus phase picked up
// when a ramp power passes through the Fresnel transform. Periodic in q with
// period n.
Complex alpha(long long q, int n);

}  // namespace vocdm
