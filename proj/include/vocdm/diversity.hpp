#pragma once

// Diversity machinery for the chirp modem over doubly selective channels.
//
// Each channel coefficient h_{l,q} occupies sub-diagonal mod(l+qM, K) of the
// effective channel; the order set collects those indices. When M >= L+1 and
// N >= 2Q+1 all (L+1)(2Q+1) indices are distinct, which is the parameter
// condition for the maximum diversity bound. For a transmitted vector s and
// error e the pairwise error probability is controlled by the rank of the
// K x rho matrix C(s,e) whose columns are alpha_q D_K^q Pi_K^{l+qM} e; the
// data-dependent diversity is the minimum of that rank over errors.

#include <cstdint>
#include <vector>

#include "vocdm/channel.hpp"
#include "vocdm/gray.hpp"
#include "vocdm/modem.hpp"
#include "vocdm/types.hpp"

namespace vocdm {

// mod(l + q*M, K), the sub-diagonal carrying h_{l,q}.
int subdiagonal_index(long long l, long long q, long long m_param, long long k_param);

struct OrderSet {
    std::vector<int> members;  // sorted ascending, each in [0, K)
    int L = 0, Q = 0, M = 1, N = 1;

    int size() const { return static_cast<int>(members.size()); }
};

OrderSet order_set(int L, int Q, int M, int N);

struct MaxOrderCondition {
    bool holds = false;  // M >= L+1 and N >= 2Q+1
    int order_set_size = 0;
    int rho = 0;
};

// Reports the parameter condition together with the actual |order set| and
// rho, so the implication "condition => full order set" can be asserted.
MaxOrderCondition check_max_order_condition(int L, int Q, int M, int N);

// C(s,e): K x rho, column (l,q) = alpha_q D_K^q Pi_K^{l+qM} e, ordered
// exactly like the stacked coefficient vector. The entries depend on e only;
// s is part of the contract because it fixes which errors are realizable.
// Throws if e = 0.
CMat error_matrix(const CVec& s, const CVec& e, const ChannelSpec& spec,
                  const ModulationParams& p);

enum class WitnessKind {
    ConstantE0,  // epsilon * 1_K: collapses the delay columns, rank-deficient
    SingleE1,    // [epsilon, 0, ..., 0]: attains the order-set rank bound
};

// Witness error built from the smallest-magnitude nonzero difference of
// constellation points.
CVec witness_error_constant(const Constellation& c, int K, WitnessKind which);

// Ergodic pairwise error probability upper bound: product over the nonzero
// eigenvalues lambda_i of B^H C^H C B of (1 + lambda_i/(4 sigma2))^{-1}.
double pep_upper_bound(const CMat& C, const CMat& R_h, double sigma2);

struct DiversityMode {
    bool exhaustive = false;
    long long n_samples = 10000;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultEnumerationBudget;

    // Full difference-alphabet enumeration (exact minimum for the
    // unconditioned error domain).
    static DiversityMode exhaustive_search(std::uint64_t budget = kDefaultEnumerationBudget);
    // Random realizable errors e = s - s' with s' in S^K, plus the
    // deterministic witnesses when they are realizable for this s; yields an
    // upper estimate of the minimum.
    static DiversityMode sampled(long long n_samples, std::uint64_t seed);
};

struct DiversityEstimate {
    int diversity = 0;  // minimum rank found
    CVec argmin_error;
    bool exact = false;  // true only for exhaustive mode
    long long errors_tried = 0;
};

DiversityEstimate data_dependent_diversity(const CVec& s, const ChannelSpec& spec,
                                           const ModulationParams& p, const Constellation& c,
                                           const DiversityMode& mode);

}  // namespace vocdm
