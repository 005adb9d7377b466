#include "vocdm/fresnel.hpp"

#include <cmath>
#include <stdexcept>

namespace vocdm {

namespace {

void require_positive(int n, const char* who) {
    if (n < 1) {
        throw std::invalid_argument(std::string(who) + ": size must be >= 1, got " +
                                    std::to_string(n));
    }
}

long long mod_floor(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

CMat dfnt_matrix(int n) {
    require_positive(n, "dfnt_matrix");
    CMat phi(n, n);
    const double half_parity = (n % 2) ? 0.5 : 0.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            const double d = static_cast<double>(m - k) + half_parity;
            const double phase = -kPi / 4.0 + kPi / n * d * d;
            phi(m, k) = scale * Complex(std::cos(phase), std::sin(phase));
        }
    }
    return phi;
}

CMat idfnt_matrix(int n) { return dfnt_matrix(n).adjoint(); }

CMat cyclic_shift_matrix(int k, long long power) {
    require_positive(k, "cyclic_shift_matrix");
    const long long p = mod_floor(power, k);
    CMat pi = CMat::Zero(k, k);
    for (long long j = 0; j < k; ++j) {
        pi((j + p) % k, j) = 1.0;
    }
    return pi;
}

CMat phase_diag_matrix(int k, long long power) {
    require_positive(k, "phase_diag_matrix");
    const long long p = mod_floor(power, k);
    CMat d = CMat::Zero(k, k);
    for (long long i = 0; i < k; ++i) {
        const double phase = 2.0 * kPi * static_cast<double>(mod_floor(p * i, k)) / k;
        d(i, i) = Complex(std::cos(phase), std::sin(phase));
    }
    return d;
}

CMat leading_phase_block(int m, int k) {
    require_positive(m, "leading_phase_block");
    require_positive(k, "leading_phase_block");
    if (m > k) {
        throw std::invalid_argument("leading_phase_block: block size " + std::to_string(m) +
                                    " exceeds full size " + std::to_string(k));
    }
    CMat lam = CMat::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        const double phase = 2.0 * kPi * i / k;
        lam(i, i) = Complex(std::cos(phase), std::sin(phase));
    }
    return lam;
}

Complex alpha(long long q, int n) {
    require_positive(n, "alpha");
    const double parity = static_cast<double>(n % 2);
    const double phase = kPi / n * static_cast<double>(q) * (parity - static_cast<double>(q));
    return Complex(std::cos(phase), std::sin(phase));
}

}  // namespace vocdm
