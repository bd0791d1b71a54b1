#pragma once

#include "rta/hilbert.hpp"
#include "rta/quadrature.hpp"
#include "rta/schedule.hpp"
#include "rta/types.hpp"

namespace rta {

// exp(-gamma0 t) f(0) + gamma0 int_0^t exp(gamma0 (t'-t)) f(t') dt'.
// The kernel concentrates near t' = t, so the quadrature panels are seeded
// geometrically from t backwards and the exponentially dead early region
// (kernel mass below exp(-35)) is dropped.
RealVector relax_kernel_value(const std::function<RealVector(double)>& f,
                              double gamma0, double t, double rel_tol = 1e-9);

// Exact solution of the RTA master equation under an environment temperature
// quench, starting from the Gibbs state at T(0). Everything commutes with H,
// so the state is a per-eigenvalue quadrature of Gibbs weights.
DensityMatrix quench_state(const Spectrum& spec, const TemperatureSchedule& schedule,
                           double gamma0, double t);

// Observable-level form of the same solution: needs only the equilibrium
// curve T -> <O>_T, no Hilbert-space object.
double observable_value(const EquilibriumCurve& curve,
                        const TemperatureSchedule& schedule, double gamma0, double t);

}  // namespace rta
