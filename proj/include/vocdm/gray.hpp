#pragma once

// Loopless reflected mixed-radix Gray enumeration: successive states differ
// in exactly one digit, by +/-1. This is what makes exhaustive ML detection
// and overall-PAPR search affordable, because a one-digit change lets the
// caller update a cached matrix-vector product in O(rows) instead of
// recomputing it.

#include <cstdint>
#include <optional>
#include <vector>

namespace vocdm {

// Default cap on exhaustive enumerations (ML detection, overall PAPR,
// exhaustive diversity): 2^26 candidates.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 1ull << 26;

// radix^digits if it fits in 64 bits, nullopt otherwise.
std::optional<std::uint64_t> checked_pow(std::uint64_t radix, int digits);

class GrayCounter {
  public:
    struct Step {
        int digit;
        int old_value;
        int new_value;
    };

    // Starts at the all-zero state. digits >= 0, radix >= 1.
    GrayCounter(int digits, int radix);

    const std::vector<int>& state() const { return value_; }

    // Advance to the next state; nullopt once all radix^digits states have
    // been visited. The returned step describes the single digit that moved.
    std::optional<Step> next();

  private:
    int radix_;
    std::vector<int> value_;
    std::vector<int> focus_;
    std::vector<int> dir_;
};

}  // namespace vocdm
