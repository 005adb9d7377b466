#include "vocdm/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
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

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Distinct pairwise differences {p - p'} including zero, in a canonical
// order. Entry values of candidate error vectors come from this set.
std::vector<Complex> difference_alphabet(const Constellation& c) {
    std::vector<Complex> diffs;
    for (const Complex& a : c.points) {
        for (const Complex& b : c.points) diffs.push_back(a - b);
    }
    std::sort(diffs.begin(), diffs.end(), lex_less);
    std::vector<Complex> out;
    for (const Complex& d : diffs) {
        if (out.empty() || std::abs(d - out.back()) > 1e-12) out.push_back(d);
    }
    return out;
}

// Smallest-magnitude nonzero difference; among equals the one with the
// largest real part, then largest imaginary part.
Complex smallest_difference(const Constellation& c) {
    if (c.size() < 2) {
        throw std::invalid_argument("witness errors need at least two constellation points");
    }
    Complex best = 0.0;
    double best_mag = 0.0;
    for (const Complex& a : c.points) {
        for (const Complex& b : c.points) {
            const Complex d = a - b;
            const double mag = std::abs(d);
            if (mag < 1e-12) continue;
            const bool better = (best_mag == 0.0) || (mag < best_mag - 1e-12) ||
                                (std::abs(mag - best_mag) <= 1e-12 && lex_less(best, d));
            if (better) {
                best = d;
                best_mag = mag;
            }
        }
    }
    return best;
}

}  // namespace

int subdiagonal_index(long long l, long long q, long long m_param, long long k_param) {
    return static_cast<int>(mod_floor(l + q * m_param, k_param));
}

OrderSet order_set(int L, int Q, int M, int N) {
    if (M < 1 || N < 1 || L < 0 || Q < 0) {
        throw std::invalid_argument("order_set needs M,N >= 1 and L,Q >= 0");
    }
    const long long K = static_cast<long long>(M) * N;
    OrderSet set;
    set.L = L;
    set.Q = Q;
    set.M = M;
    set.N = N;
    for (int l = 0; l <= L; ++l) {
        for (int q = -Q; q <= Q; ++q) {
            set.members.push_back(subdiagonal_index(l, q, M, K));
        }
    }
    std::sort(set.members.begin(), set.members.end());
    set.members.erase(std::unique(set.members.begin(), set.members.end()), set.members.end());
    return set;
}

MaxOrderCondition check_max_order_condition(int L, int Q, int M, int N) {
    MaxOrderCondition rep;
    rep.holds = (M >= L + 1) && (N >= 2 * Q + 1);
    rep.order_set_size = order_set(L, Q, M, N).size();
    rep.rho = (L + 1) * (2 * Q + 1);
    return rep;
}

CMat error_matrix(const CVec& s, const CVec& e, const ChannelSpec& spec,
                  const ModulationParams& p) {
    const int K = spec.K;
    if (p.K() != K) {
        throw std::invalid_argument("error_matrix: modulation K = " + std::to_string(p.K()) +
                                    " does not match channel K = " + std::to_string(K));
    }
    if (s.size() != K || e.size() != K) {
        throw std::invalid_argument("error_matrix: s and e must have length K = " +
                                    std::to_string(K));
    }
    if (e.isZero(0.0)) {
        throw std::invalid_argument("error_matrix: zero error vector");
    }
    CMat C(K, spec.rho());
    for (int l = 0; l <= spec.L; ++l) {
        for (int q = -spec.Q; q <= spec.Q; ++q) {
            const Complex a = alpha(q, p.N);
            const long long shift = l + static_cast<long long>(q) * p.M;
            const int col = spec.coeff_index(l, q);
            for (int i = 0; i < K; ++i) {
                C(i, col) = a * unit_phase(q, i, K) * e(mod_floor(i - shift, K));
            }
        }
    }
    return C;
}

CVec witness_error_constant(const Constellation& c, int K, WitnessKind which) {
    if (K < 1) throw std::invalid_argument("witness error needs K >= 1");
    const Complex eps = smallest_difference(c);
    if (which == WitnessKind::ConstantE0) {
        return CVec::Constant(K, eps);
    }
    CVec e = CVec::Zero(K);
    e(0) = eps;
    return e;
}

double pep_upper_bound(const CMat& C, const CMat& R_h, double sigma2) {
    if (sigma2 <= 0.0) {
        throw std::invalid_argument("pep_upper_bound: sigma2 must be positive");
    }
    const CMat b = psd_factor(R_h);
    const CMat gram = b.adjoint() * C.adjoint() * C * b;
    const std::vector<double> lam = eigvals_hermitian(gram);
    if (lam.empty()) return 1.0;
    const double cut = kDefaultRankTol * std::max(lam.front(), 0.0);
    double bound = 1.0;
    for (double v : lam) {
        if (v > cut) bound /= 1.0 + v / (4.0 * sigma2);
    }
    return bound;
}

DiversityMode DiversityMode::exhaustive_search(std::uint64_t budget) {
    DiversityMode m;
    m.exhaustive = true;
    m.budget = budget;
    return m;
}

DiversityMode DiversityMode::sampled(long long n_samples, std::uint64_t seed) {
    DiversityMode m;
    m.exhaustive = false;
    m.n_samples = n_samples;
    m.seed = seed;
    return m;
}

DiversityEstimate data_dependent_diversity(const CVec& s, const ChannelSpec& spec,
                                           const ModulationParams& p, const Constellation& c,
                                           const DiversityMode& mode) {
    const int K = spec.K;
    if (spec.rho() > K) {
        throw std::invalid_argument("diversity analysis assumes K >= rho; got K = " +
                                    std::to_string(K) + ", rho = " + std::to_string(spec.rho()));
    }
    if (s.size() != K) {
        throw std::invalid_argument("data vector must have length K = " + std::to_string(K));
    }

    DiversityEstimate est;
    est.diversity = spec.rho() + 1;  // above any attainable rank

    auto consider = [&](const CVec& e) {
        const int r = numerical_rank(error_matrix(s, e, spec, p));
        ++est.errors_tried;
        if (r < est.diversity) {
            est.diversity = r;
            est.argmin_error = e;
        }
    };

    if (mode.exhaustive) {
        const std::vector<Complex> diffs = difference_alphabet(c);
        const auto total = checked_pow(diffs.size(), K);
        if (!total || *total > mode.budget) {
            throw std::runtime_error("exhaustive diversity: " + std::to_string(diffs.size()) +
                                     "^" + std::to_string(K) + " error patterns exceed the budget of " +
                                     std::to_string(mode.budget));
        }
        int zero_index = 0;
        for (size_t i = 0; i < diffs.size(); ++i) {
            if (std::abs(diffs[i]) < 1e-12) zero_index = static_cast<int>(i);
        }
        GrayCounter gray(K, static_cast<int>(diffs.size()));
        CVec e(K);
        int nonzero_entries = 0;
        for (int k = 0; k < K; ++k) {
            e(k) = diffs[0];
            if (0 != zero_index) ++nonzero_entries;
        }
        if (nonzero_entries > 0) consider(e);
        while (auto step = gray.next()) {
            e(step->digit) = diffs[step->new_value];
            if (step->old_value == zero_index) ++nonzero_entries;
            if (step->new_value == zero_index) --nonzero_entries;
            if (nonzero_entries > 0) consider(e);
        }
        est.exact = true;
        return est;
    }

    // Sampled mode: deterministic witnesses first (when realizable for this
    // s), then random realizable errors e = s - s'.
    auto realizable = [&](const CVec& e) {
        for (int k = 0; k < K; ++k) {
            const Complex target = s(k) - e(k);
            if (std::abs(target - c.points[c.nearest(target)]) > 1e-9) return false;
        }
        return true;
    };

    {
        // Single-position witness adapted to s: the smallest difference
        // s_0 - s'_0 over s'_0 != s_0 is always realizable.
        Complex eps = 0.0;
        double best_mag = 0.0;
        for (const Complex& q : c.points) {
            const Complex d = s(0) - q;
            const double mag = std::abs(d);
            if (mag < 1e-12) continue;
            if (best_mag == 0.0 || mag < best_mag) {
                eps = d;
                best_mag = mag;
            }
        }
        CVec e1 = CVec::Zero(K);
        e1(0) = eps;
        consider(e1);

        const CVec e0 = witness_error_constant(c, K, WitnessKind::ConstantE0);
        if (realizable(e0)) consider(e0);
    }

    std::mt19937_64 rng(mode.seed);
    std::uniform_int_distribution<int> pick(0, c.size() - 1);
    for (long long t = 0; t < mode.n_samples; ++t) {
        CVec e(K);
        bool nonzero = false;
        for (int k = 0; k < K; ++k) {
            e(k) = s(k) - c.points[pick(rng)];
            if (std::abs(e(k)) > 1e-12) nonzero = true;
        }
        if (!nonzero) continue;  // s' == s is not an error event
        consider(e);
    }
    est.exact = false;
    return est;
}

}  // namespace vocdm
