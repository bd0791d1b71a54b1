#pragma once

#include "rta/types.hpp"

namespace rta {

// Diagonalize a Hermitian operator; energies come back ascending.
// Rejects inputs whose anti-Hermitian part exceeds 1e-10 (relative).
Spectrum eig_hermitian(const Operator& h);

// Stabilized Gibbs weights w_i = exp(-beta (E_i - E_min)) / sum_j exp(...).
// At beta = +inf the weight is spread uniformly over the ground space
// (states within 1e-9 * spectral width of E_min).
RealVector gibbs_weights(const Spectrum& spec, InverseTemperature beta);

// rho_E = V diag(w) V^dagger, the thermal equilibrium density matrix.
DensityMatrix gibbs_state(const Spectrum& spec, InverseTemperature beta);

// Tr(rho O)
Complex expectation(const DensityMatrix& rho, const Operator& o);

// Fermi occupation 1/(exp(beta e) + 1); at beta = +inf a step at e = 0
// with value 1/2 on the step itself.
double fermi_occupation(double energy, InverseTemperature beta);

}  // namespace rta
