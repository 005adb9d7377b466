#include "vocdm/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace vocdm {

namespace {

double asymmetry(const CMat& m) { return (m - m.adjoint()).norm(); }

void require_hermitian(const CMat& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix is " + shape_str(m) +
                                    ", expected square");
    }
    const double tol = 1e-10 * std::max(1.0, m.norm());
    if (asymmetry(m) > tol) {
        throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian (||m-m^H||_F=" +
                                    std::to_string(asymmetry(m)) + ")");
    }
}

}  // namespace

CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: dimension mismatch, " + shape_str(a) + " times " +
                                    shape_str(b));
    }
    return a * b;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

int numerical_rank(const CMat& m, double rel_tol) {
    if (rel_tol <= 0.0) {
        throw std::invalid_argument("numerical_rank: rel_tol must be positive");
    }
    if (m.size() == 0) return 0;
    Eigen::BDCSVD<CMat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double cut = rel_tol * sv(0);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) ++r;
    }
    return r;
}

CMat psd_factor(const CMat& r) {
    require_hermitian(r, "psd_factor");
    Eigen::SelfAdjointEigenSolver<CMat> es(r);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("psd_factor: eigendecomposition failed");
    }
    Eigen::VectorXd lam = es.eigenvalues();
    const double lam_max = lam.size() ? lam.maxCoeff() : 0.0;
    const double neg_tol = 1e-10 * std::max(1.0, lam_max);
    Eigen::VectorXd scale(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) < -neg_tol) {
            throw std::invalid_argument("psd_factor: matrix is not positive semi-definite "
                                        "(eigenvalue " + std::to_string(lam(i)) + ")");
        }
        scale(i) = std::sqrt(std::max(lam(i), 0.0));
    }
    // B = V * sqrt(Lambda), so B * B^H = V * Lambda * V^H = r.
    return es.eigenvectors() * scale.asDiagonal();
}

std::vector<double> eigvals_hermitian(const CMat& m) {
    require_hermitian(m, "eigvals_hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigvals_hermitian: eigendecomposition failed");
    }
    std::vector<double> vals(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    return vals;
}

}  // namespace vocdm
