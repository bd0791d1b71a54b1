#include "rta/perturbation.hpp"

#include "rta/fermion.hpp"

#include <cmath>
#include <iostream>

namespace rta {

double check_conserved(const Operator& o, const Operator& h) {
    if (o.rows() != h.rows() || o.cols() != h.cols() || o.rows() != o.cols()) {
        throw std::invalid_argument("check_conserved: dimension mismatch");
    }
    const double scale = o.norm() * h.norm();
    if (scale == 0.0) return 0.0;
    return (o * h - h * o).norm() / scale;
}

double delta_expectation(const Operator& o, const PerturbationSetup& setup) {
    const Operator h = setup.spectrum.reconstruct();
    const double comm = check_conserved(o, h);
    if (comm > 1e-10) {
        throw std::invalid_argument(
            "delta_expectation: O is not conserved (relative commutator norm " +
            std::to_string(comm) + "); the formula holds only for conserved quantities");
    }
    if (!(setup.gamma0 > 0.0)) {
        throw std::invalid_argument("delta_expectation: gamma0 must be > 0");
    }
    const DensityMatrix rho0 = gibbs_state(setup.spectrum, setup.beta);
    double delta = 0.0;
    for (const auto& [l, eps] : setup.perturbing_jumps) {
        if (eps < 0.0) {
            throw std::invalid_argument("delta_expectation: epsilon must be >= 0");
        }
        if (eps == 0.0) continue;
        if (eps / setup.gamma0 > 0.1) {
            std::cerr << "warning: eps/gamma0 = " << eps / setup.gamma0
                      << " outside the perturbative regime\n";
        }
        const Operator ldl = l.adjoint() * l;
        const Complex term = expectation(rho0, l.adjoint() * o * l) -
                             0.5 * expectation(rho0, o * ldl) -
                             0.5 * expectation(rho0, ldl * o);
        delta += (eps / setup.gamma0) * term.real();
    }
    return delta;
}

std::vector<std::pair<Operator, double>> local_reservoir_jumps(
    const LocalReservoirPair& cfg) {
    const Operator c = fermion_annihilation(cfg.length, cfg.site);
    const Operator n = fermion_site_number(cfg.length, cfg.site);
    const Operator id = Operator::Identity(n.rows(), n.cols());
    return {{c * n, cfg.eps_an}, {c.adjoint() * (id - n), cfg.eps_cr}};
}

double delta_nk_closed_form(const LocalReservoirPair& cfg, int mode,
                            InverseTemperature beta, double gamma0) {
    if (mode < 1 || mode > cfg.length) {
        throw std::invalid_argument("delta_nk_closed_form: mode index out of range");
    }
    if (!(gamma0 > 0.0)) {
        throw std::invalid_argument("delta_nk_closed_form: gamma0 must be > 0");
    }
    const double eps_k = -2.0 * cfg.t_hop * std::cos(M_PI * mode / (cfg.length + 1));
    const double nk = fermi_occupation(eps_k, beta);
    const double s = std::sin(M_PI * mode * cfg.site / (cfg.length + 1));
    const double weight = 2.0 / (cfg.length + 1) * s * s;
    return (weight / gamma0) * (cfg.eps_cr * (1.0 - nk) - cfg.eps_an * nk);
}

}  // namespace rta
