#pragma once

// Block detectors over the effective channel. The ML detector enumerates the
// full |S|^K candidate space in mixed-radix Gray order so that each step
// changes a single symbol and the residual y - H_eff*s can be updated with
// one column axpy; per-candidate cost is O(K) instead of O(K^2). The MMSE
// detector is the scalable fallback for block sizes where enumeration is out
// of reach.

#include <cstdint>

#include "vocdm/gray.hpp"
#include "vocdm/modem.hpp"
#include "vocdm/types.hpp"

namespace vocdm {

struct DetectionResult {
    CVec s_hat;
    double metric = 0.0;  // ||y - H_eff * s_hat||_2^2
    std::uint64_t candidates_evaluated = 0;
};

// argmin over S^K of ||y - H_eff*s||^2. Enumeration order is deterministic
// and ties break toward the lexicographically smallest symbol-index vector.
// Throws if |S|^K exceeds the budget (use mmse_detect instead).
DetectionResult ml_detect(const CVec& y, const CMat& h_eff, const Constellation& c,
                          std::uint64_t budget = kDefaultEnumerationBudget);

// Per-symbol hard decision on (H^H H + sigma2 I)^{-1} H^H y. Requires
// sigma2 > 0.
DetectionResult mmse_detect(const CVec& y, const CMat& h_eff, const Constellation& c,
                            double sigma2);

}  // namespace vocdm
