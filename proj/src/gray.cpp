#include "vocdm/gray.hpp"

#include <numeric>
#include <stdexcept>

namespace vocdm {

std::optional<std::uint64_t> checked_pow(std::uint64_t radix, int digits) {
    std::uint64_t out = 1;
    for (int i = 0; i < digits; ++i) {
        if (radix != 0 && out > UINT64_MAX / radix) return std::nullopt;
        out *= radix;
    }
    return out;
}

GrayCounter::GrayCounter(int digits, int radix) : radix_(radix) {
    if (digits < 0 || radix < 1) {
        throw std::invalid_argument("GrayCounter: need digits >= 0 and radix >= 1");
    }
    value_.assign(digits, 0);
    focus_.resize(digits + 1);
    std::iota(focus_.begin(), focus_.end(), 0);
    dir_.assign(digits, 1);
}

std::optional<GrayCounter::Step> GrayCounter::next() {
    const int n = static_cast<int>(value_.size());
    if (radix_ == 1) return std::nullopt;  // single state, nothing to step to
    const int j = focus_[0];
    focus_[0] = 0;
    if (j == n) return std::nullopt;
    const int old_value = value_[j];
    value_[j] += dir_[j];
    const int new_value = value_[j];
    if (new_value == 0 || new_value == radix_ - 1) {
        // Digit hit a boundary: reverse it and pass the focus upward.
        dir_[j] = -dir_[j];
        focus_[j] = focus_[j + 1];
        focus_[j + 1] = j + 1;
    }
    return Step{j, old_value, new_value};
}

}  // namespace vocdm
