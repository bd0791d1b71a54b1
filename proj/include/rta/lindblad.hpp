#pragma once

#include "rta/hilbert.hpp"
#include "rta/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace rta {

// Jump operator L of the dissipator L rho L^dag - 1/2 {L^dag L, rho}. Any
// scalar prefactor (sqrt(gamma0), sqrt(eps)) is folded into the matrix.
struct JumpOperator {
    Operator matrix;
};

// RTA term gamma0 (rho_E(beta) - rho) relaxing toward the Gibbs state of the
// given spectrum. beta_of_t, when set, overrides beta during evolve() so the
// environment temperature can be quenched.
struct RtaTerm {
    InverseTemperature beta;
    double gamma0;
    Spectrum spectrum;
    std::optional<std::function<InverseTemperature(double)>> beta_of_t;
};

struct LindbladGenerator {
    Operator hamiltonian;
    std::vector<JumpOperator> jumps;
    std::optional<RtaTerm> rta;

    Eigen::Index dim() const { return hamiltonian.rows(); }
    void validate() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<double> raw_traces;  // Re tr(rho) before renormalization
    // logged diagnostics from re-Hermitization and trace monitoring
    double max_hermiticity_drift = 0.0;
    double max_trace_drift = 0.0;
};

// The N^2 thermal jump operators L_ij = sqrt(gamma0 w_i) |i><j| (diagonal
// i = j included), with w_i the stabilized Gibbs weight. Detailed balance
// C_ij^2 exp(-beta E_j) = C_ji^2 exp(-beta E_i) holds by construction and the
// full set reassembles the compact relaxation term gamma0 (rho_E - rho).
// beta = +inf is rejected; use the compact RtaTerm for ground-state baths.
std::vector<JumpOperator> rta_jump_set(const Spectrum& spec, InverseTemperature beta,
                                       double gamma0);

// -i[H, rho] + sum_j (L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho})
//            + gamma0 (rho_E - rho) when the RTA term is present.
Operator lindblad_rhs(const LindbladGenerator& gen, const DensityMatrix& rho);

double default_step(const LindbladGenerator& gen);

// Fixed-step classical RK4. `times` must ascend from 0 and are hit exactly
// (the interval between consecutive outputs is cut into ceil(dt/step)
// substeps). Emitted states are re-Hermitized with the drift logged;
// positivity is monitored, not projected, and a violation beyond 1e-6 aborts
// with an instability diagnostic.
Trajectory evolve(const LindbladGenerator& gen, const DensityMatrix& rho0,
                  const std::vector<double>& times, double step);

// Column-stacking vectorization: vec(d rho/dt) = A vec(rho) + b, with
// b = gamma0 vec(rho_E) carrying the constant RTA term.
struct Superoperator {
    Operator matrix;        // A, N^2 x N^2
    ComplexVector affine;   // b
};

inline constexpr Eigen::Index kMaxSuperoperatorDim = 4096;  // N^2

Superoperator superoperator(const LindbladGenerator& gen);

// Solve A vec(rho) + b = 0 with the trace-1 constraint appended as an extra
// least-squares row. Throws when b = 0 and the null space of A has dimension
// > 1 (no unique steady state).
DensityMatrix steady_state(const LindbladGenerator& gen);

}  // namespace rta
