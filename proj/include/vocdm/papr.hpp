#pragma once

// Peak-to-average power ratio analysis. With a unit-average-energy alphabet
// and unitary modulation the instantaneous PAPR of a block is just its
// squared infinity norm, and it factors over the M interleaved sub-blocks:
// only the size-N kernel matters. The overall PAPR (the maximum over all
// data) is therefore an exhaustive search over S^N, bounded above by a*N
// with a the alphabet's peak energy; the Fourier kernel attains a*N exactly.

#include <cstdint>
#include <vector>

#include "vocdm/gray.hpp"
#include "vocdm/modem.hpp"
#include "vocdm/types.hpp"

namespace vocdm {

// max_k |u_k|^2. Throws on an empty vector.
double instantaneous_papr(const CVec& u);

// 1 - (1 - exp(-gamma))^K, clamped to [0, 1]; the large-N multicarrier
// approximation of P(PAPR > gamma).
double theoretical_ccdf(double gamma, int K);

struct CcdfCurve {
    std::vector<double> gamma_grid;   // linear thresholds
    std::vector<double> empirical;    // P(PAPR > gamma), Monte Carlo
    std::vector<double> theoretical;  // the closed-form approximation
    std::vector<long long> exceed_counts;
    long long trials = 0;
    double max_observed = 0.0;
};

// Empirical CCDF of instantaneous_papr(modulate(s)) over seeded i.i.d. data
// draws. Per-trial seeds are derived from (seed, trial index), so the curve
// is identical for any worker count.
CcdfCurve papr_ccdf_monte_carlo(const ModulationParams& p, const Constellation& c,
                                long long trials, std::vector<double> gamma_grid,
                                std::uint64_t seed, int workers = 1);

struct OverallPapr {
    double value = 0.0;
    CVec argmax_subblock;
    std::uint64_t candidates_evaluated = 0;
};

// Exact maximum of the instantaneous PAPR over all data realizations, which
// reduces to a search over the size-N sub-block alphabet (the result does
// not depend on M). The search fixes the first symbol to one representative
// per phase-rotation orbit of the alphabet; a global rotation of the
// sub-block cannot change the peak of a linear transform.
OverallPapr overall_papr_exhaustive(const ModulationParams& p, const Constellation& c,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

// a*N.
double papr_upper_bound(const Constellation& c, int N);

// Overall PAPR of the Fourier-kernel baseline: a*N in closed form, attained
// by a constant sub-block at peak energy.
double otfs_overall_papr(const Constellation& c, int N);

}  // namespace vocdm
