#pragma once

// Doubly selective channel under the complex-exponential basis expansion
// model. Each of the L+1 delay taps varies over the block as a sum of 2Q+1
// complex exponentials with frequencies 2*pi*q/K:
//
//   h(l, i) = sum_q h_{l,q} exp(j*2*pi*q*i/K).
//
// The block-circular channel matrix is H = sum_{l,q} h_{l,q} D_K^q Pi_K^l,
// and after chirp (de)modulation with parameters (M, N) the effective
// channel collapses to
//
//   H_eff = sum_{l,q} alpha_q h_{l,q} D_K^q Pi_K^{l+qM},
//
// i.e. coefficient h_{l,q} lands alone on sub-diagonal mod(l+qM, K). Both
// matrices are assembled directly from that structure; the brute-force
// triple product only lives in tests.

#include <cstdint>
#include <utility>

#include "vocdm/modem.hpp"
#include "vocdm/types.hpp"

namespace vocdm {

// Physical spreads to grid sizes: L = floor(tau_max/T_s), Q = ceil(f_max*K*T_s).
struct GridMapping {
    double tau_max = 0.0;  // seconds
    double f_max = 0.0;    // Hz
    double t_s = 1.0;      // sampling period, seconds
    int K = 1;             // block size
};

std::pair<int, int> grid_from_physical(const GridMapping& g);

struct ChannelSpec {
    int L = 0;  // delay taps minus one
    int Q = 0;  // Doppler index bound
    int K = 1;  // block size
    CMat R_h;   // rho x rho coefficient covariance, Hermitian PSD, full rank

    int rho() const { return (L + 1) * (2 * Q + 1); }

    // Position of h_{l,q} in the stacked coefficient vector: delay-major
    // within each Doppler block, q ascending from -Q to Q.
    int coeff_index(int l, int q) const { return (q + Q) * (L + 1) + l; }

    // i.i.d. coefficients, R_h = I/rho: expected total channel energy 1, so
    // SNR = 1/sigma^2 is the received SNR.
    static ChannelSpec iid(int L, int Q, int K);
    static ChannelSpec with_covariance(int L, int Q, int K, CMat R);
};

struct ChannelRealization {
    CVec h;  // length rho, ordered [h_{0,-Q}, ..., h_{L,-Q}, ..., h_{L,Q}]
};

// h = B * h_white with B * B^H = R_h; deterministic for a fixed seed.
ChannelRealization sample_channel(const ChannelSpec& spec, std::uint64_t rng_seed);

// CE-BEM tap value at delay l, time index i; periodic in i with period K.
Complex tap_gain(const ChannelRealization& h, const ChannelSpec& spec, int l, long long i);

// K x K time-domain channel matrix.
CMat channel_matrix(const ChannelRealization& h, const ChannelSpec& spec);

// r_k = sum_l h(l,k) u_{mod(k-l,K)} + v_k with v ~ CN(0, sigma2 I);
// sigma2 = 0 gives the exact noiseless product.
CVec apply_channel(const CVec& u, const ChannelRealization& h, const ChannelSpec& spec,
                   double sigma2, std::uint64_t rng_seed);

// Closed-form effective channel for the Fresnel kind (throws for other
// kinds); never forms the dense triple product.
CMat effective_channel(const ChannelRealization& h, const ChannelSpec& spec,
                       const ModulationParams& p);

}  // namespace vocdm
