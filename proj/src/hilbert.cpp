#include "rta/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace rta {

Spectrum eig_hermitian(const Operator& h) {
    if (h.rows() != h.cols() || h.rows() < 1) {
        throw std::invalid_argument("eig_hermitian: operator must be square");
    }
    const double defect = hermiticity_defect(h);
    if (defect > 1e-10 * std::max(1.0, h.norm())) {
        throw std::invalid_argument("eig_hermitian: input not Hermitian, ||H - H^dag|| = " +
                                    std::to_string(defect));
    }
    Eigen::SelfAdjointEigenSolver<Operator> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
    }
    return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

RealVector gibbs_weights(const Spectrum& spec, InverseTemperature beta) {
    const Eigen::Index n = spec.dim();
    const double e_min = spec.energies.minCoeff();
    RealVector w(n);
    if (beta.is_infinite()) {
        const double width = spec.energies.maxCoeff() - e_min;
        const double degeneracy_tol = 1e-9 * width;
        for (Eigen::Index i = 0; i < n; ++i) {
            w(i) = (spec.energies(i) - e_min <= degeneracy_tol) ? 1.0 : 0.0;
        }
    } else {
        // Factor out exp(-beta E_min); Z is never formed in raw units.
        for (Eigen::Index i = 0; i < n; ++i) {
            w(i) = std::exp(-beta.beta * (spec.energies(i) - e_min));
        }
    }
    return w / w.sum();
}

DensityMatrix gibbs_state(const Spectrum& spec, InverseTemperature beta) {
    const RealVector w = gibbs_weights(spec, beta);
    Operator rho = spec.basis * w.asDiagonal() * spec.basis.adjoint();
    rho = 0.5 * (rho + rho.adjoint().eval());  // scrub roundoff
    return DensityMatrix(std::move(rho));
}

Complex expectation(const DensityMatrix& rho, const Operator& o) {
    if (rho.dim() != o.rows() || o.rows() != o.cols()) {
        throw std::invalid_argument("expectation: dimension mismatch (rho " +
                                    std::to_string(rho.dim()) + ", O " +
                                    std::to_string(o.rows()) + "x" +
                                    std::to_string(o.cols()) + ")");
    }
    // Tr(rho O) = sum_ij rho_ij O_ji
    return (rho.matrix().transpose().cwiseProduct(o)).sum();
}

double fermi_occupation(double energy, InverseTemperature beta) {
    if (beta.is_infinite()) {
        if (energy < 0.0) return 1.0;
        if (energy > 0.0) return 0.0;
        return 0.5;
    }
    const double x = beta.beta * energy;
    if (x > 0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (std::exp(x) + 1.0);
}

}  // namespace rta
