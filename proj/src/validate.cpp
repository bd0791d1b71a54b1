#include "rta/validate.hpp"

#include "rta/fermion.hpp"
#include "rta/hilbert.hpp"
#include "rta/lindblad.hpp"
#include "rta/perturbation.hpp"
#include "rta/quench.hpp"
#include "rta/scaling.hpp"

#include <cmath>
#include <sstream>

namespace rta {

double RandomMatrices::uniform() {
    // splitmix64; fixed here so the validation suite is reproducible across
    // standard-library implementations.
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    return double(z >> 11) * 0x1.0p-53;
}

Eigen::MatrixXcd RandomMatrices::hermitian(int dim) {
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            a(i, j) = Complex(2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0);
        }
    }
    return 0.5 * (a + a.adjoint().eval());
}

Eigen::MatrixXcd RandomMatrices::density(int dim) {
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            g(i, j) = Complex(2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0);
        }
    }
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint().eval());
}

namespace {

struct Suite {
    ValidationResult result;

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        std::ostringstream os;
        os << (ok ? "PASS" : "FAIL") << "  " << name;
        if (!detail.empty()) os << "  (" << detail << ")";
        result.lines.push_back(os.str());
        (ok ? result.passed : result.failed)++;
    }

    template <typename F>
    void run(const std::string& name, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            check(name + " [threw]", false, e.what());
        }
    }
};

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

void gibbs_invariants(Suite& s, RandomMatrices& rng) {
    const double betas[] = {0.0, 0.1, 1.0, 10.0,
                            std::numeric_limits<double>::infinity()};
    for (int dim : {4, 16, 64}) {
        const Operator h = rng.hermitian(dim);
        const Spectrum spec = eig_hermitian(h);
        double worst_comm = 0.0;
        bool all_valid = true;
        for (double b : betas) {
            const DensityMatrix rho = gibbs_state(spec, InverseTemperature(b));
            all_valid = all_valid && rho.min_eigenvalue() >= -1e-10;
            const Operator comm = rho.matrix() * h - h * rho.matrix();
            worst_comm = std::max(worst_comm, comm.norm());
        }
        s.check("gibbs invariants dim=" + std::to_string(dim), all_valid);
        s.check("gibbs stationarity [rho_E,H]=0 dim=" + std::to_string(dim),
                worst_comm < 1e-10 * h.norm(), "norm " + fmt(worst_comm));
    }
}

void car_relations(Suite& s) {
    const int length = 4;
    const unsigned dim = 1u << length;
    const Operator id = Operator::Identity(dim, dim);
    double worst = 0.0;
    for (int i = 1; i <= length; ++i) {
        const Operator ci = fermion_annihilation(length, i);
        for (int j = 1; j <= length; ++j) {
            const Operator cj = fermion_annihilation(length, j);
            const Operator acar = ci * cj.adjoint() + cj.adjoint() * ci;
            const Operator acc = ci * cj + cj * ci;
            worst = std::max(worst, (acar - (i == j ? id : Operator::Zero(dim, dim).eval())).norm());
            worst = std::max(worst, acc.norm());
        }
    }
    s.check("canonical anticommutation (Jordan-Wigner)", worst == 0.0, "defect " + fmt(worst));

    // unitary mode transform: sum_k n_k = sum_l n_l, [n_k, H] = 0
    Operator total_modes = Operator::Zero(dim, dim);
    for (int k = 1; k <= length; ++k) total_modes += fermion_mode_number(length, k);
    Operator total_sites = Operator::Zero(dim, dim);
    for (int l = 1; l <= length; ++l) total_sites += fermion_site_number(length, l);
    s.check("mode transform unitarity (sum n_k = sum n_l)",
            (total_modes - total_sites).norm() < 1e-12);

    const Operator h = build_fermion_chain(length, 1.0);
    double worst_conservation = 0.0;
    for (int k = 1; k <= length; ++k) {
        worst_conservation =
            std::max(worst_conservation, check_conserved(fermion_mode_number(length, k), h));
    }
    s.check("mode occupations conserved", worst_conservation < 1e-12,
            "rel norm " + fmt(worst_conservation));
}

void fermi_consistency(Suite& s) {
    double worst = 0.0;
    for (int length : {2, 4, 6}) {
        const Spectrum spec = eig_hermitian(build_fermion_chain(length, 1.0));
        const RealVector eps = single_particle_energies(length, 1.0);
        for (double b : {0.0, 1.0, 5.0}) {
            const DensityMatrix rho = gibbs_state(spec, InverseTemperature(b));
            for (int k = 1; k <= length; ++k) {
                const double nk =
                    expectation(rho, fermion_mode_number(length, k)).real();
                const double fermi = fermi_occupation(eps(k - 1), InverseTemperature(b));
                worst = std::max(worst, std::abs(nk - fermi));
            }
        }
    }
    s.check("many-body <n_k> equals Fermi function", worst < 1e-8, "max dev " + fmt(worst));
}

void jump_compact_equivalence(Suite& s, RandomMatrices& rng) {
    double worst = 0.0;
    for (int dim : {2, 3, 4, 6}) {
        const Spectrum spec = eig_hermitian(rng.hermitian(dim));
        for (double b : {0.0, 0.5, 2.0}) {
            const InverseTemperature beta(b);
            const double gamma0 = 0.7;
            const auto jumps = rta_jump_set(spec, beta, gamma0);
            const Operator rho_e = gibbs_state(spec, beta).matrix();
            for (int rep = 0; rep < 5; ++rep) {
                const Operator rho = rng.density(dim);
                Operator dissipator = Operator::Zero(dim, dim);
                for (const JumpOperator& j : jumps) {
                    const Operator ldl = j.matrix.adjoint() * j.matrix;
                    dissipator += j.matrix * rho * j.matrix.adjoint() -
                                  0.5 * (ldl * rho + rho * ldl);
                }
                worst = std::max(
                    worst,
                    (dissipator - gamma0 * (rho_e - rho)).cwiseAbs().maxCoeff());
            }
        }
    }
    s.check("N^2 jump set reassembles gamma0 (rho_E - rho)", worst <= 1e-10,
            "max dev " + fmt(worst));
}

void rhs_structure(Suite& s, RandomMatrices& rng) {
    const int dim = 5;
    const Spectrum spec = eig_hermitian(rng.hermitian(dim));
    LindbladGenerator gen{spec.reconstruct(), {}, RtaTerm{InverseTemperature(0.8), 1.3, spec, {}}};
    gen.jumps.push_back({0.3 * rng.hermitian(dim)});
    gen.jumps.push_back({rng.density(dim)});
    double worst_trace = 0.0, worst_herm = 0.0, worst_sup = 0.0;
    const Superoperator sup = superoperator(gen);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho(rng.density(dim));
        const Operator rhs = lindblad_rhs(gen, rho);
        worst_trace = std::max(worst_trace, std::abs(rhs.trace()));
        worst_herm = std::max(worst_herm, hermiticity_defect(rhs));
        const ComplexVector v =
            Eigen::Map<const ComplexVector>(rho.matrix().data(), dim * dim);
        const ComplexVector lhs = sup.matrix * v + sup.affine;
        const ComplexVector ref =
            Eigen::Map<const ComplexVector>(rhs.data(), dim * dim);
        worst_sup = std::max(worst_sup, (lhs - ref).cwiseAbs().maxCoeff());
    }
    s.check("lindblad_rhs traceless", worst_trace < 1e-12, fmt(worst_trace));
    s.check("lindblad_rhs Hermitian", worst_herm < 1e-12, fmt(worst_herm));
    s.check("superoperator matches lindblad_rhs", worst_sup < 1e-12, fmt(worst_sup));
}

void quench_agreement(Suite& s, RandomMatrices& rng) {
    const int dim = 2;
    const Spectrum spec = eig_hermitian(rng.hermitian(dim));
    const double gamma0 = 1.0;
    const TemperatureSchedule cooling = TemperatureSchedule::linear_cooling(2.0, 5.0);
    LindbladGenerator gen{spec.reconstruct(),
                          {},
                          RtaTerm{InverseTemperature(0.5), gamma0, spec,
                                  [&cooling](double t) { return cooling.beta_at(t); }}};
    const DensityMatrix rho0 = gibbs_state(spec, cooling.beta_at(0.0));
    const Trajectory traj = evolve(gen, rho0, {1.0, 2.5, 5.0}, 1e-3);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const DensityMatrix exact = quench_state(spec, cooling, gamma0, traj.times[i]);
        worst = std::max(worst, trace_distance(traj.states[i], exact));
    }
    s.check("exact quench matches RK4 integration", worst < 1e-6, "dist " + fmt(worst));

    // observable-level form against the state-level form
    const Operator o = spec.basis *
                       RealVector::LinSpaced(dim, 0.3, 1.7).asDiagonal() *
                       spec.basis.adjoint();
    EquilibriumCurve curve{
        [&](double temperature) {
            return expectation(
                       gibbs_state(spec, InverseTemperature::from_temperature(temperature)), o)
                .real();
        },
        "curve_O"};
    double worst_obs = 0.0;
    for (double t : {0.0, 1.7, 5.0}) {
        const double via_state = expectation(quench_state(spec, cooling, gamma0, t), o).real();
        const double via_curve = observable_value(curve, cooling, gamma0, t);
        worst_obs = std::max(worst_obs, std::abs(via_state - via_curve));
    }
    s.check("state-level and observable-level quench agree", worst_obs < 1e-8,
            "dev " + fmt(worst_obs));
}

void scaling_fit(Suite& s) {
    ScalingExperiment exp{power_law_curve(1.0, 1.0), ScheduleFamily::Heating, 1.0,
                          log_tau_grid(1e2, 1e4, 10), 1.0};
    const ScalingFit fit = fit_exponent(run_experiment(exp));
    s.check("Kibble-Zurek exponent psi=1", std::abs(fit.exponent - 1.0) < 0.05,
            "fitted " + fmt(fit.exponent));
}

void perturbation_closed_form(Suite& s) {
    double worst = 0.0;
    for (int length : {2, 4}) {
        const Spectrum spec = eig_hermitian(build_fermion_chain(length, 1.0));
        for (int site = 1; site <= length; ++site) {
            LocalReservoirPair cfg{site, 3e-3, 5e-3, length, 1.0};
            for (double b : {0.0, 1.0}) {
                PerturbationSetup setup{spec, InverseTemperature(b), 1.0,
                                        local_reservoir_jumps(cfg)};
                for (int k = 1; k <= length; ++k) {
                    const double generic =
                        delta_expectation(fermion_mode_number(length, k), setup);
                    const double closed =
                        delta_nk_closed_form(cfg, k, InverseTemperature(b), 1.0);
                    worst = std::max(worst, std::abs(generic - closed));
                }
            }
        }
    }
    s.check("perturbation closed form matches generic formula", worst < 1e-10,
            "max dev " + fmt(worst));
}

}  // namespace

ValidationResult run_validation(std::uint64_t seed) {
    Suite s;
    RandomMatrices rng(seed);
    s.run("gibbs", [&] { gibbs_invariants(s, rng); });
    s.run("car", [&] { car_relations(s); });
    s.run("fermi", [&] { fermi_consistency(s); });
    s.run("jump_compact", [&] { jump_compact_equivalence(s, rng); });
    s.run("rhs", [&] { rhs_structure(s, rng); });
    s.run("quench", [&] { quench_agreement(s, rng); });
    s.run("scaling", [&] { scaling_fit(s); });
    s.run("perturbation", [&] { perturbation_closed_form(s); });
    return s.result;
}

}  // namespace rta
