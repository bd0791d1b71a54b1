#include "rta/fermion.hpp"
#include "rta/lindblad.hpp"
#include "rta/perturbation.hpp"

#include <doctest.h>

#include <cmath>

using namespace rta;

namespace {

// exact steady-state shift of n_k for a chain with local reservoirs at rates
// (eps_an, eps_cr) scaled by `eps`
double exact_shift(const Spectrum& spec, const LocalReservoirPair& cfg,
                   InverseTemperature beta, double gamma0, int mode) {
    LindbladGenerator gen{spec.reconstruct(), {}, RtaTerm{beta, gamma0, spec, {}}};
    for (const auto& [op, rate] : local_reservoir_jumps(cfg)) {
        if (rate > 0.0) gen.jumps.push_back({std::sqrt(rate) * op});
    }
    const Operator nk = fermion_mode_number(cfg.length, mode);
    return expectation(steady_state(gen), nk).real() -
           expectation(gibbs_state(spec, beta), nk).real();
}

}  // namespace

TEST_CASE("check_conserved basics") {
    const Operator h = build_fermion_chain(2, 1.0);
    CHECK(check_conserved(h, h) == 0.0);
    for (int k = 1; k <= 2; ++k) {
        CHECK(check_conserved(fermion_mode_number(2, k), h) < 1e-12);
    }
    const Operator c1 = fermion_annihilation(2, 1);
    CHECK(check_conserved(c1 + c1.adjoint().eval(), h) > 1e-3);
    CHECK_THROWS_AS(check_conserved(Operator::Identity(2, 2), h), std::invalid_argument);
}

TEST_CASE("delta_expectation: zero rates and commuting Hermitian jumps give zero") {
    const int length = 2;
    const Spectrum spec = eig_hermitian(build_fermion_chain(length, 1.0));
    const Operator n1 = fermion_mode_number(length, 1);

    PerturbationSetup zero{spec, InverseTemperature(1.0), 1.0,
                           local_reservoir_jumps({1, 0.0, 0.0, length, 1.0})};
    CHECK(delta_expectation(n1, zero) == 0.0);

    // Hermitian jump commuting with O: the three terms cancel algebraically
    PerturbationSetup commuting{spec, InverseTemperature(1.0), 1.0, {{n1, 1e-3}}};
    CHECK(std::abs(delta_expectation(n1, commuting)) < 1e-15);
}

TEST_CASE("delta_expectation rejects non-conserved observables") {
    const int length = 2;
    const Spectrum spec = eig_hermitian(build_fermion_chain(length, 1.0));
    const Operator c1 = fermion_annihilation(length, 1);
    PerturbationSetup setup{spec, InverseTemperature(1.0), 1.0, {{c1, 1e-3}}};
    CHECK_THROWS_WITH_AS(delta_expectation(c1 + c1.adjoint().eval(), setup),
                         doctest::Contains("conserved"), std::invalid_argument);
}

TEST_CASE("local reservoir jumps reduce to bare ladder operators") {
    for (int length : {2, 4}) {
        for (int site = 1; site <= length; ++site) {
            const auto jumps = local_reservoir_jumps({site, 0.1, 0.2, length, 1.0});
            const Operator c = fermion_annihilation(length, site);
            CHECK((jumps[0].first - c).norm() == 0.0);
            CHECK((jumps[1].first - c.adjoint()).norm() == 0.0);
            CHECK(jumps[0].second == 0.1);
            CHECK(jumps[1].second == 0.2);
        }
    }
}

TEST_CASE("local reservoir jumps on L = 2: explicit Fock-ordered matrices") {
    // basis index n1 + 2 n2; c_1 maps |01> -> |00> and |11> -> |10>
    const auto jumps = local_reservoir_jumps({1, 1.0, 1.0, 2, 1.0});
    Operator expected = Operator::Zero(4, 4);
    expected(0, 1) = 1.0;
    expected(2, 3) = 1.0;
    CHECK((jumps[0].first - expected).norm() == 0.0);
    CHECK((jumps[1].first - expected.adjoint().eval()).norm() == 0.0);
}

TEST_CASE("delta_nk_closed_form basics") {
    const LocalReservoirPair cfg{2, 0.0, 0.0, 4, 1.0};
    CHECK(delta_nk_closed_form(cfg, 1, InverseTemperature(1.0), 1.0) == 0.0);

    const LocalReservoirPair active{2, 3e-3, 5e-3, 4, 1.0};
    const double s = std::sin(M_PI * 1 * 2 / 5.0);
    const double expected = (2.0 / 5.0) * s * s * (5e-3 - 3e-3) / 2.0;
    CHECK(delta_nk_closed_form(active, 1, InverseTemperature(0.0), 1.0) ==
          doctest::Approx(expected).epsilon(1e-14));

    CHECK_THROWS_AS(delta_nk_closed_form(active, 0, InverseTemperature(1.0), 1.0),
                    std::invalid_argument);
}

TEST_CASE("closed form and generic formula agree to 1e-10 across the grid") {
    double worst = 0.0;
    for (int length : {2, 3, 4, 6}) {
        const Spectrum spec = eig_hermitian(build_fermion_chain(length, 1.0));
        for (int site = 1; site <= length; ++site) {
            const LocalReservoirPair cfg{site, 2e-3, 7e-3, length, 1.0};
            for (double b : {0.0, 1.0, 5.0}) {
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
    CHECK(worst < 1e-10);
}

TEST_CASE("first-order error shrinks linearly in eps (quadratic remainder)") {
    const int length = 4;
    const Spectrum spec = eig_hermitian(build_fermion_chain(length, 1.0));
    const InverseTemperature beta(1.0);
    const double gamma0 = 1.0;
    const int mode = 2;

    auto normalized_error = [&](double eps) {
        const LocalReservoirPair cfg{2, eps, eps, length, 1.0};
        PerturbationSetup setup{spec, beta, gamma0, local_reservoir_jumps(cfg)};
        const double predicted =
            delta_expectation(fermion_mode_number(length, mode), setup);
        return std::abs(predicted - exact_shift(spec, cfg, beta, gamma0, mode)) / eps;
    };
    const double ratio = normalized_error(1e-2) / normalized_error(1e-3);
    CHECK(ratio >= 5.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("Tr(O [H, rho_ss]) vanishes for conserved O on solved steady states") {
    const int length = 4;
    const Spectrum spec = eig_hermitian(build_fermion_chain(length, 1.0));
    const Operator h = spec.reconstruct();
    LindbladGenerator gen{h, {}, RtaTerm{InverseTemperature(1.0), 1.0, spec, {}}};
    for (const auto& [op, rate] : local_reservoir_jumps({2, 1e-2, 1e-2, length, 1.0})) {
        gen.jumps.push_back({std::sqrt(rate) * op});
    }
    const DensityMatrix rho_ss = steady_state(gen);
    for (int k = 1; k <= length; ++k) {
        const Operator o = fermion_mode_number(length, k);
        const Operator comm = h * rho_ss.matrix() - rho_ss.matrix() * h;
        CHECK(std::abs((o * comm).trace()) <= 1e-9 * o.norm());
    }
}

TEST_CASE("sign sanity: injection raises occupations, drain lowers them") {
    const int length = 4;
    for (double b : {0.0, 1.0}) {
        for (int k = 1; k <= length; ++k) {
            const LocalReservoirPair inject{2, 0.0, 1e-3, length, 1.0};
            CHECK(delta_nk_closed_form(inject, k, InverseTemperature(b), 1.0) >= 0.0);
            const LocalReservoirPair drain{2, 1e-3, 0.0, length, 1.0};
            CHECK(delta_nk_closed_form(drain, k, InverseTemperature(b), 1.0) <= 0.0);
        }
    }
}
