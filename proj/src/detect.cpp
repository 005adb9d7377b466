#include "vocdm/detect.hpp"

#include <stdexcept>

#include <Eigen/Cholesky>

namespace vocdm {

namespace {

void require_dims(const CVec& y, const CMat& h_eff) {
    if (h_eff.rows() != y.size() || h_eff.rows() != h_eff.cols()) {
        throw std::invalid_argument("detector: channel is " + shape_str(h_eff) +
                                    ", observation has length " + std::to_string(y.size()));
    }
}

}  // namespace

DetectionResult ml_detect(const CVec& y, const CMat& h_eff, const Constellation& c,
                          std::uint64_t budget) {
    require_dims(y, h_eff);
    const int K = static_cast<int>(y.size());
    const int S = c.size();
    const auto total = checked_pow(static_cast<std::uint64_t>(S), K);
    if (!total || *total > budget) {
        throw std::runtime_error("ml_detect: |S|^K = " + std::to_string(S) + "^" +
                                 std::to_string(K) + " exceeds the candidate budget of " +
                                 std::to_string(budget) +
                                 "; reduce K or use mmse_detect");
    }

    GrayCounter gray(K, S);
    std::vector<int> best_idx = gray.state();
    std::vector<int> cur_idx = gray.state();

    // Residual for the all-zeros-index candidate.
    CVec d = y;
    for (int k = 0; k < K; ++k) d -= h_eff.col(k) * c.points[0];
    double best_metric = d.squaredNorm();
    std::uint64_t evaluated = 1;

    while (auto step = gray.next()) {
        cur_idx[step->digit] = step->new_value;
        d -= h_eff.col(step->digit) * (c.points[step->new_value] - c.points[step->old_value]);
        // Periodic refresh keeps the incrementally updated residual from
        // accumulating rounding drift over very long enumerations.
        if ((evaluated & 0xffffull) == 0xffffull) {
            d = y;
            for (int k = 0; k < K; ++k) d -= h_eff.col(k) * c.points[cur_idx[k]];
        }
        const double metric = d.squaredNorm();
        ++evaluated;
        if (metric < best_metric ||
            (metric == best_metric && cur_idx < best_idx)) {
            best_metric = metric;
            best_idx = cur_idx;
        }
    }

    DetectionResult res;
    res.s_hat = symbols_from_indices(best_idx, c);
    res.metric = best_metric;
    res.candidates_evaluated = evaluated;
    return res;
}

DetectionResult mmse_detect(const CVec& y, const CMat& h_eff, const Constellation& c,
                            double sigma2) {
    require_dims(y, h_eff);
    if (sigma2 <= 0.0) {
        throw std::invalid_argument("mmse_detect: sigma2 must be positive");
    }
    const int K = static_cast<int>(y.size());
    const CMat gram = h_eff.adjoint() * h_eff + sigma2 * CMat::Identity(K, K);
    Eigen::LLT<CMat> llt(gram);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("mmse_detect: regularized Gram matrix is not positive definite");
    }
    const CVec x = llt.solve(h_eff.adjoint() * y);

    std::vector<int> idx(K);
    for (int k = 0; k < K; ++k) idx[k] = c.nearest(x(k));

    DetectionResult res;
    res.s_hat = symbols_from_indices(idx, c);
    res.metric = (y - h_eff * res.s_hat).squaredNorm();
    res.candidates_evaluated = 1;
    return res;
}

}  // namespace vocdm
