#include "vocdm/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "vocdm/fresnel.hpp"
#include "vocdm/linalg.hpp"
#include "vocdm/rng.hpp"

namespace vocdm {

namespace {

long long mod_floor(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

Complex unit_phase(long long q, long long i, int k) {
    const double phase = 2.0 * kPi * static_cast<double>(mod_floor(q * i, k)) / k;
    return Complex(std::cos(phase), std::sin(phase));
}

void validate(const ChannelSpec& spec) {
    if (spec.L < 0 || spec.Q < 0 || spec.K < 1) {
        throw std::invalid_argument("channel spec needs L >= 0, Q >= 0, K >= 1");
    }
    if (spec.R_h.rows() != spec.rho() || spec.R_h.cols() != spec.rho()) {
        throw std::invalid_argument("R_h is " + shape_str(spec.R_h) + ", expected " +
                                    std::to_string(spec.rho()) + "x" + std::to_string(spec.rho()));
    }
}

}  // namespace

std::pair<int, int> grid_from_physical(const GridMapping& g) {
    if (g.t_s <= 0.0) throw std::invalid_argument("sampling period must be positive");
    if (g.K < 1) throw std::invalid_argument("block size must be >= 1");
    if (g.tau_max < 0.0 || g.f_max < 0.0) {
        throw std::invalid_argument("spreads must be nonnegative");
    }
    const int L = static_cast<int>(std::floor(g.tau_max / g.t_s));
    const int Q = static_cast<int>(std::ceil(g.f_max * g.K * g.t_s));
    return {L, Q};
}

ChannelSpec ChannelSpec::iid(int L, int Q, int K) {
    ChannelSpec spec;
    spec.L = L;
    spec.Q = Q;
    spec.K = K;
    const int rho = spec.rho();
    spec.R_h = CMat::Identity(rho, rho) / static_cast<double>(rho);
    validate(spec);
    return spec;
}

ChannelSpec ChannelSpec::with_covariance(int L, int Q, int K, CMat R) {
    ChannelSpec spec;
    spec.L = L;
    spec.Q = Q;
    spec.K = K;
    spec.R_h = std::move(R);
    validate(spec);
    if (numerical_rank(spec.R_h) != spec.rho()) {
        throw std::invalid_argument("coefficient covariance must be full rank");
    }
    return spec;
}

ChannelRealization sample_channel(const ChannelSpec& spec, std::uint64_t rng_seed) {
    validate(spec);
    const CMat b = psd_factor(spec.R_h);
    std::mt19937_64 rng(rng_seed);
    const CVec white = complex_gaussian(spec.rho(), rng);
    return ChannelRealization{b * white};
}

Complex tap_gain(const ChannelRealization& h, const ChannelSpec& spec, int l, long long i) {
    if (l < 0 || l > spec.L) {
        throw std::out_of_range("tap_gain: delay " + std::to_string(l) + " outside [0, " +
                                std::to_string(spec.L) + "]");
    }
    Complex g = 0.0;
    for (int q = -spec.Q; q <= spec.Q; ++q) {
        g += h.h(spec.coeff_index(l, q)) * unit_phase(q, i, spec.K);
    }
    return g;
}

CMat channel_matrix(const ChannelRealization& h, const ChannelSpec& spec) {
    validate(spec);
    if (h.h.size() != spec.rho()) {
        throw std::invalid_argument("realization has " + std::to_string(h.h.size()) +
                                    " coefficients, spec needs " + std::to_string(spec.rho()));
    }
    const int K = spec.K;
    CMat m = CMat::Zero(K, K);
    // One generalized-permutation term per (l, q): row i, column mod(i-l, K),
    // weight h_{l,q} exp(j*2*pi*q*i/K).
    for (int l = 0; l <= spec.L; ++l) {
        for (int q = -spec.Q; q <= spec.Q; ++q) {
            const Complex c = h.h(spec.coeff_index(l, q));
            for (int i = 0; i < K; ++i) {
                m(i, mod_floor(i - l, K)) += c * unit_phase(q, i, K);
            }
        }
    }
    return m;
}

CVec apply_channel(const CVec& u, const ChannelRealization& h, const ChannelSpec& spec,
                   double sigma2, std::uint64_t rng_seed) {
    validate(spec);
    if (u.size() != spec.K) {
        throw std::invalid_argument("apply_channel: block length " + std::to_string(u.size()) +
                                    " does not match K = " + std::to_string(spec.K));
    }
    if (sigma2 < 0.0) throw std::invalid_argument("noise variance must be nonnegative");
    const int K = spec.K;
    CVec r(K);
    for (int k = 0; k < K; ++k) {
        Complex acc = 0.0;
        for (int l = 0; l <= spec.L; ++l) {
            acc += tap_gain(h, spec, l, k) * u(mod_floor(k - l, K));
        }
        r(k) = acc;
    }
    if (sigma2 > 0.0) {
        std::mt19937_64 rng(rng_seed);
        r += std::sqrt(sigma2) * complex_gaussian(K, rng);
    }
    return r;
}

CMat effective_channel(const ChannelRealization& h, const ChannelSpec& spec,
                       const ModulationParams& p) {
    validate(spec);
    if (p.kind != TransformKind::Fresnel) {
        throw std::invalid_argument("closed-form effective channel requires the Fresnel kind; "
                                    "got " + to_string(p.kind));
    }
    if (p.K() != spec.K) {
        throw std::invalid_argument("modulation K = " + std::to_string(p.K()) +
                                    " does not match channel K = " + std::to_string(spec.K));
    }
    if (h.h.size() != spec.rho()) {
        throw std::invalid_argument("realization has " + std::to_string(h.h.size()) +
                                    " coefficients, spec needs " + std::to_string(spec.rho()));
    }
    const int K = spec.K;
    CMat m = CMat::Zero(K, K);
    for (int l = 0; l <= spec.L; ++l) {
        for (int q = -spec.Q; q <= spec.Q; ++q) {
            const Complex c = alpha(q, p.N) * h.h(spec.coeff_index(l, q));
            const long long shift = l + static_cast<long long>(q) * p.M;
            for (int i = 0; i < K; ++i) {
                m(i, mod_floor(i - shift, K)) += c * unit_phase(q, i, K);
            }
        }
    }
    return m;
}

}  // namespace vocdm
