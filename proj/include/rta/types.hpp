#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace rta {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

// beta in [0, +inf]; +inf encodes T = 0.
struct InverseTemperature {
    double beta;

    explicit InverseTemperature(double b) : beta(b) {
        if (!(b >= 0.0)) {
            throw std::invalid_argument("InverseTemperature: beta must be >= 0, got " +
                                        std::to_string(b));
        }
    }

    static InverseTemperature infinite() {
        return InverseTemperature(std::numeric_limits<double>::infinity());
    }

    // T = 0 maps to beta = +inf.
    static InverseTemperature from_temperature(double temperature) {
        if (!(temperature >= 0.0)) {
            throw std::invalid_argument("temperature must be >= 0, got " +
                                        std::to_string(temperature));
        }
        if (temperature == 0.0) return infinite();
        return InverseTemperature(1.0 / temperature);
    }

    bool is_infinite() const { return std::isinf(beta); }
};

// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian operator.
struct Spectrum {
    RealVector energies;   // E_1 <= ... <= E_N
    Operator basis;        // columns are the eigenvectors

    Eigen::Index dim() const { return energies.size(); }

    // V diag(E) V^dagger
    Operator reconstruct() const {
        return basis * energies.asDiagonal() * basis.adjoint();
    }
};

double hermiticity_defect(const Operator& a);

// Hermitian, unit-trace, positive semidefinite state. The constructor
// validates; positivity_tol is the allowed magnitude of a negative eigenvalue
// (integrator output is checked with a looser bound than exact states).
class DensityMatrix {
  public:
    explicit DensityMatrix(Operator entries, double positivity_tol = 1e-10);

    const Operator& matrix() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }
    double min_eigenvalue() const { return min_eig_; }

  private:
    Operator entries_;
    double min_eig_;
};

// 1/2 ||rho - sigma||_1
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace rta
