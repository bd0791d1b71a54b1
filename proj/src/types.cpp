#include "rta/types.hpp"

#include <Eigen/Eigenvalues>

namespace rta {

double hermiticity_defect(const Operator& a) {
    return (a - a.adjoint()).norm();
}

DensityMatrix::DensityMatrix(Operator entries, double positivity_tol)
    : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
        throw std::invalid_argument("DensityMatrix: matrix must be square, got " +
                                    std::to_string(entries_.rows()) + "x" +
                                    std::to_string(entries_.cols()));
    }
    const double herm = hermiticity_defect(entries_);
    if (herm > 1e-12 * std::max(1.0, entries_.norm())) {
        throw std::invalid_argument("DensityMatrix: not Hermitian, ||rho - rho^dag|| = " +
                                    std::to_string(herm));
    }
    const double tr_err = std::abs(entries_.trace() - Complex(1.0, 0.0));
    if (tr_err > 1e-12 * entries_.rows()) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1 by " +
                                    std::to_string(tr_err));
    }
    Eigen::SelfAdjointEigenSolver<Operator> es(entries_, Eigen::EigenvaluesOnly);
    min_eig_ = es.eigenvalues().minCoeff();
    if (min_eig_ < -positivity_tol) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                    std::to_string(min_eig_) + " below tolerance -" +
                                    std::to_string(positivity_tol));
    }
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    Eigen::SelfAdjointEigenSolver<Operator> es(rho.matrix() - sigma.matrix(),
                                               Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace rta
