#pragma once

#include "rta/hilbert.hpp"
#include "rta/lindblad.hpp"
#include "rta/types.hpp"

#include <utility>
#include <vector>

namespace rta {

// First-order steady-state shift of a conserved quantity: the system relaxes
// toward the Gibbs state at rate gamma0 while weak extra jumps (rate epsilon
// each, operators stored unscaled) push it away.
struct PerturbationSetup {
    Spectrum spectrum;
    InverseTemperature beta;
    double gamma0;
    std::vector<std::pair<Operator, double>> perturbing_jumps;  // (L, epsilon >= 0)
};

// Site l of an open fermion chain coupled to a zero-temperature reservoir:
// annihilation channel c_l n_l at rate eps_an, creation channel
// c^dag_l (1 - n_l) at rate eps_cr.
struct LocalReservoirPair {
    int site;
    double eps_an;
    double eps_cr;
    int length;
    double t_hop;
};

// ||[O, H]||_F / (||O||_F ||H||_F); callers require <= 1e-10 before using the
// perturbative formula, which holds only for conserved quantities.
double check_conserved(const Operator& o, const Operator& h);

// sum_i (eps_i/gamma0) [<L_i^dag O L_i>_0 - 1/2 <O L_i^dag L_i>_0
//                       - 1/2 <L_i^dag L_i O>_0], Gibbs expectations at
// (spectrum, beta). Throws when O is not conserved; warns on stderr when
// eps/gamma0 > 0.1 (outside the validity regime, still evaluable).
double delta_expectation(const Operator& o, const PerturbationSetup& setup);

// The literal matrix products (c_l n_l, eps_an) and (c^dag_l (1 - n_l),
// eps_cr); algebraically these reduce to c_l and c^dag_l.
std::vector<std::pair<Operator, double>> local_reservoir_jumps(
    const LocalReservoirPair& cfg);

// Closed form for the mode occupation shift:
// (1/gamma0) (2/(L+1)) sin^2(pi k l/(L+1)) [eps_cr (1 - <n_k>) - eps_an <n_k>]
// with <n_k> the Fermi occupation of mode k.
double delta_nk_closed_form(const LocalReservoirPair& cfg, int mode,
                            InverseTemperature beta, double gamma0);

}  // namespace rta
