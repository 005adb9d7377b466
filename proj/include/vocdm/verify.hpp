#pragma once

// Self-check suite bundling the structural identities the whole library
// rests on: the Fresnel commutation identity, circulant structure, the
// closed-form effective channel against the brute-force triple product, the
// error-matrix factorization, the order-set parameter condition, and the
// diversity witnesses. Each check reports its measured residual so a report
// is useful even when green.

#include <functional>
#include <string>
#include <vector>

#include "vocdm/types.hpp"

namespace vocdm {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measure = 0.0;    // residual / violation count, check-specific
    double tolerance = 0.0;  // measure must stay <= tolerance
    std::string detail;
};

using AlphaFn = std::function<Complex(long long, int)>;

// Max Frobenius residual of Phi_N D_N^q Phi_N^H - alpha(q,N) D_N^q Pi_N^q
// over n in [n_min, n_max], |q| <= n. The alpha factor is injectable so a
// perturbed phase can be shown to break the identity.
double commutation_identity_residual(int n_min, int n_max, const AlphaFn& alpha_fn = {});

// Max residual of column c of Phi_N^H against Pi_N^c * (column 0), n in range.
double idfnt_circulant_residual(int n_min, int n_max);

// Residual of Phi_N^H (x) I_M against circ(phi_0 (x) t).
double kron_circulant_residual(int n, int m);

// Closed-form effective channel vs the dense triple product over `count`
// random (M, N, L, Q, h) tuples; returns the max relative Frobenius error.
double effective_channel_residual(int count, std::uint64_t seed);

// H_eff*e vs C(s,e)*h over `count` random draws; max of
// ||H_eff e - C h|| / (||h|| * ||e||).
double factorization_residual(int count, std::uint64_t seed);

// Number of (L<=3, Q<=2, M<=8, N<=8) grid points violating the parameter
// condition implication, |O| <= min(rho, K), or the SC/OCDM closed forms.
int order_set_grid_violations();

// Witness rank checks over sampled errors; returns violation count.
int diversity_witness_violations(std::uint64_t seed);

std::vector<CheckResult> run_verify();

}  // namespace vocdm
