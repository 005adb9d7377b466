#include "vocdm/papr.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "vocdm/rng.hpp"

namespace vocdm {

double instantaneous_papr(const CVec& u) {
    if (u.size() == 0) throw std::invalid_argument("instantaneous_papr: empty vector");
    double peak = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) peak = std::max(peak, std::norm(u(i)));
    return peak;
}

double theoretical_ccdf(double gamma, int K) {
    if (K < 1) throw std::invalid_argument("theoretical_ccdf: K must be >= 1");
    if (gamma <= 0.0) return 1.0;
    // (1-e^-g)^K via exp(K*log1p(-e^-g)) to stay accurate in the deep tail.
    const double v = 1.0 - std::exp(K * std::log1p(-std::exp(-gamma)));
    return std::clamp(v, 0.0, 1.0);
}

CcdfCurve papr_ccdf_monte_carlo(const ModulationParams& p, const Constellation& c,
                                long long trials, std::vector<double> gamma_grid,
                                std::uint64_t seed, int workers) {
    if (trials < 1) throw std::invalid_argument("papr_ccdf_monte_carlo: trials must be >= 1");
    if (workers < 1) workers = 1;
    std::sort(gamma_grid.begin(), gamma_grid.end());
    const int G = static_cast<int>(gamma_grid.size());
    const int K = p.K();

    struct Partial {
        std::vector<long long> counts;
        double max_observed = 0.0;
    };
    std::vector<Partial> parts(workers);
    for (auto& part : parts) part.counts.assign(G, 0);

    auto run_range = [&](long long begin, long long end, Partial& part) {
        for (long long t = begin; t < end; ++t) {
            std::mt19937_64 rng(derive_seed(seed, {static_cast<std::uint64_t>(t)}));
            std::uniform_int_distribution<int> pick(0, c.size() - 1);
            CVec s(K);
            for (int k = 0; k < K; ++k) s(k) = c.points[pick(rng)];
            const double papr = instantaneous_papr(modulate(s, p));
            part.max_observed = std::max(part.max_observed, papr);
            // thresholds exceeded by this sample form a prefix of the grid
            for (int g = 0; g < G && papr > gamma_grid[g]; ++g) ++part.counts[g];
        }
    };

    if (workers == 1) {
        run_range(0, trials, parts[0]);
    } else {
        std::vector<std::thread> pool;
        const long long chunk = (trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long long begin = std::min<long long>(w * chunk, trials);
            const long long end = std::min<long long>(begin + chunk, trials);
            pool.emplace_back(run_range, begin, end, std::ref(parts[w]));
        }
        for (auto& th : pool) th.join();
    }

    CcdfCurve curve;
    curve.gamma_grid = gamma_grid;
    curve.trials = trials;
    curve.exceed_counts.assign(G, 0);
    for (const auto& part : parts) {
        curve.max_observed = std::max(curve.max_observed, part.max_observed);
        for (int g = 0; g < G; ++g) curve.exceed_counts[g] += part.counts[g];
    }
    curve.empirical.resize(G);
    curve.theoretical.resize(G);
    for (int g = 0; g < G; ++g) {
        curve.empirical[g] = static_cast<double>(curve.exceed_counts[g]) / trials;
        curve.theoretical[g] = theoretical_ccdf(gamma_grid[g], K);
    }
    return curve;
}

namespace {

// Unit-modulus rotations mapping the alphabet onto itself (always a group
// containing 1).
std::vector<Complex> phase_symmetries(const Constellation& c) {
    std::vector<Complex> group;
    for (const Complex& p : c.points) {
        if (std::abs(std::abs(p) - std::abs(c.points[0])) > 1e-12) continue;
        const Complex cand = p / c.points[0];
        bool closed = true;
        for (const Complex& q : c.points) {
            const Complex rotated = cand * q;
            bool found = false;
            for (const Complex& r : c.points) {
                if (std::abs(rotated - r) < 1e-9) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                closed = false;
                break;
            }
        }
        if (closed) group.push_back(cand);
    }
    return group;
}

// One representative point index per orbit under the rotation group.
std::vector<int> orbit_representatives(const Constellation& c,
                                       const std::vector<Complex>& group) {
    std::vector<bool> covered(c.points.size(), false);
    std::vector<int> reps;
    for (int i = 0; i < c.size(); ++i) {
        if (covered[i]) continue;
        reps.push_back(i);
        for (const Complex& g : group) {
            const Complex rotated = g * c.points[i];
            for (int j = 0; j < c.size(); ++j) {
                if (std::abs(rotated - c.points[j]) < 1e-9) covered[j] = true;
            }
        }
    }
    return reps;
}

}  // namespace

OverallPapr overall_papr_exhaustive(const ModulationParams& p, const Constellation& c,
                                    std::uint64_t budget) {
    const int N = p.N;
    const int S = c.size();
    const auto total = checked_pow(static_cast<std::uint64_t>(S), N);
    if (!total || *total > budget) {
        throw std::runtime_error("overall_papr_exhaustive: |S|^N = " + std::to_string(S) + "^" +
                                 std::to_string(N) + " exceeds the candidate budget of " +
                                 std::to_string(budget));
    }

    ModulationParams sub{1, N, p.kind};  // search runs over one sub-block
    const CMat kernel = modulation_matrix(sub);

    const std::vector<Complex> group = phase_symmetries(c);
    const std::vector<int> reps = orbit_representatives(c, group);

    OverallPapr best;
    best.value = -1.0;
    std::vector<int> idx(N, 0);
    for (int rep : reps) {
        idx.assign(N, 0);
        idx[0] = rep;
        CVec sblock(N);
        for (int n = 0; n < N; ++n) sblock(n) = c.points[idx[n]];
        CVec w = kernel * sblock;
        ++best.candidates_evaluated;
        const double first = instantaneous_papr(w);
        if (first > best.value) {
            best.value = first;
            best.argmax_subblock = sblock;
        }
        if (N == 1) continue;
        // Positions 1..N-1 run through Gray order; each step updates one
        // symbol and one column contribution of the cached product.
        GrayCounter gray(N - 1, S);
        while (auto step = gray.next()) {
            const int pos = step->digit + 1;
            const Complex delta = c.points[step->new_value] - c.points[step->old_value];
            sblock(pos) = c.points[step->new_value];
            w += kernel.col(pos) * delta;
            ++best.candidates_evaluated;
            if ((best.candidates_evaluated & 0xffffull) == 0) w = kernel * sblock;
            const double papr = instantaneous_papr(w);
            if (papr > best.value) {
                best.value = papr;
                best.argmax_subblock = sblock;
            }
        }
    }
    return best;
}

double papr_upper_bound(const Constellation& c, int N) {
    if (N < 1) throw std::invalid_argument("papr_upper_bound: N must be >= 1");
    return c.peak_energy * N;
}

double otfs_overall_papr(const Constellation& c, int N) {
    if (N < 1) throw std::invalid_argument("otfs_overall_papr: N must be >= 1");
    return c.peak_energy * N;
}

}  // namespace vocdm
