#include "rta/scaling.hpp"

#include <doctest.h>

#include <cmath>

using namespace rta;

TEST_CASE("power_law_curve closed-form values") {
    CHECK(power_law_curve(1.0, 1.0)(0.0) == doctest::Approx(1.0));
    CHECK(power_law_curve(2.0, 2.0)(1.0) == doctest::Approx(0.25));
    CHECK(power_law_curve(0.5, 4.0)(3.0) == doctest::Approx(0.5));
    CHECK(power_law_curve(1.0, 1.0)(1.5) == 0.0);
    CHECK_THROWS_AS(power_law_curve(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("builtin curves: endpoint values") {
    CHECK(fermi_residual_energy_3d()(0.0) == 0.0);
    CHECK(bose_box(1.0)(1.0) == 0.0);
    CHECK(bose_box(1.0)(0.0) == doctest::Approx(1.0));
    CHECK(bose_trap(1.0)(0.5) == doctest::Approx(1.0 - 0.125));
    // ground-state filling: negative-energy modes of the L = 5 chain
    CHECK(chain_excitation_number(5, 1.0)(0.0) == doctest::Approx(2.5));  // zero mode counts 1/2
    CHECK(chain_excitation_number(4, 1.0)(0.0) == doctest::Approx(2.0));
    CHECK(builtin_curves().size() == 4);
}

TEST_CASE("fermi residual energy follows the Sommerfeld T^2 law at low T") {
    const EquilibriumCurve curve = fermi_residual_energy_3d();
    for (double t : {1e-3, 1e-2}) {
        CHECK(curve(t) / (t * t) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-3));
    }
    // consistency across a decade: delta E(10 T)/delta E(T) ~ 100
    CHECK(curve(1e-4) * 100.0 == doctest::Approx(curve(1e-3)).epsilon(1e-4));
}

TEST_CASE("run_experiment: constant curve is tau-independent") {
    ScalingExperiment exp{{[](double) { return 2.5; }, "const"},
                          ScheduleFamily::Heating,
                          1.0,
                          log_tau_grid(1.0, 1e3, 8),
                          1.0};
    for (const auto& [tau, value] : run_experiment(exp)) {
        CHECK(value == doctest::Approx(2.5).epsilon(1e-9));
    }
}

TEST_CASE("run_experiment: psi = 1 heating follows Gamma(psi+1)/(gamma0 tau)^psi") {
    ScalingExperiment exp{power_law_curve(1.0, 1.0), ScheduleFamily::Heating, 1.0,
                          log_tau_grid(1e2, 1e4, 9), 1.0};
    for (const auto& [tau, value] : run_experiment(exp)) {
        CHECK(value == doctest::Approx(1.0 / tau).epsilon(0.03));
    }
}

TEST_CASE("run_experiment: frozen limit at small gamma0 tau") {
    ScalingExperiment exp{power_law_curve(1.0, 1.0), ScheduleFamily::Heating, 1.0,
                          log_tau_grid(1e-4, 1e-2, 8), 1.0};
    const auto table = run_experiment(exp);
    CHECK(table.back().second == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("run_experiment validates the tau grid") {
    ScalingExperiment exp{power_law_curve(1.0, 1.0), ScheduleFamily::Heating, 1.0,
                          {1.0, 2.0, 3.0}, 1.0};
    CHECK_THROWS_AS(run_experiment(exp), std::invalid_argument);
    exp.tau_grid = log_tau_grid(1.0, 10.0, 8);  // only one decade
    CHECK_THROWS_AS(run_experiment(exp), std::invalid_argument);
}

TEST_CASE("fit_exponent: exact power law, constant data and error paths") {
    std::vector<std::pair<double, double>> exact;
    for (double tau : log_tau_grid(10.0, 1e3, 9)) {
        exact.emplace_back(tau, 7.0 * std::pow(tau, -2.0));
    }
    const ScalingFit fit = fit_exponent(exact);
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.stderr_ < 1e-10);
    CHECK(fit.r_squared == doctest::Approx(1.0));

    std::vector<std::pair<double, double>> constant;
    for (double tau : log_tau_grid(10.0, 1e3, 9)) constant.emplace_back(tau, 3.0);
    CHECK(fit_exponent(constant).exponent == doctest::Approx(0.0));

    std::vector<std::pair<double, double>> bad{{1.0, 1.0}, {10.0, 0.0},
                                               {20.0, 1.0}, {40.0, 1.0}, {100.0, 1.0}};
    CHECK_THROWS_AS(fit_exponent(bad), std::invalid_argument);
    std::vector<std::pair<double, double>> few{{1.0, 1.0}, {10.0, 0.5}};
    CHECK_THROWS_AS(fit_exponent(few), std::invalid_argument);
}

TEST_CASE("fit_exponent is invariant under rescaling the values") {
    ScalingExperiment exp{power_law_curve(2.0, 1.0), ScheduleFamily::Heating, 1.0,
                          log_tau_grid(1e2, 1e4, 9), 1.0};
    auto table = run_experiment(exp);
    const double e1 = fit_exponent(table).exponent;
    for (auto& [tau, value] : table) value *= 137.0;
    CHECK(fit_exponent(table).exponent == doctest::Approx(e1).epsilon(1e-12));
}

TEST_CASE("fitted exponent recovers psi for synthetic power laws") {
    for (double psi : {0.5, 2.0}) {
        ScalingExperiment exp{power_law_curve(psi, 1.0), ScheduleFamily::Heating, 1.0,
                              log_tau_grid(1e2, 1e4, 10), 1.0};
        const ScalingFit fit = fit_exponent(run_experiment(exp));
        CHECK(std::abs(fit.exponent - psi) <= 0.05 * psi);
    }
}

TEST_CASE("dropping the exp(-gamma0 tau) initial term moves the exponent by < 1%") {
    const double gamma0 = 1.0;
    ScalingExperiment exp{power_law_curve(1.0, 1.0), ScheduleFamily::Heating, gamma0,
                          log_tau_grid(1e2, 1e4, 10), 1.0};
    auto with_term = run_experiment(exp);
    auto without_term = with_term;
    for (auto& [tau, value] : without_term) {
        value -= std::exp(-gamma0 * tau) * exp.curve(0.0);
    }
    const double e_with = fit_exponent(with_term).exponent;
    const double e_without = fit_exponent(without_term).exponent;
    CHECK(std::abs(e_with - e_without) < 0.01 * std::abs(e_with));
}

TEST_CASE("table1_report: structure, verdicts and the self-check row") {
    Table1Options opts;
    opts.gamma0_tau_min = 1e2;
    opts.gamma0_tau_max = 1e4;
    opts.tau_points = 8;
    opts.chain_length = 4;
    const Table1Report report = table1_report(1.0, opts);
    REQUIRE(report.rows.size() == 6);
    int out_of_scope = 0;
    for (const Table1Row& row : report.rows) {
        CHECK((row.verdict == "agree" || row.verdict == "disagree" ||
               row.verdict == "out_of_scope"));
        if (row.verdict == "out_of_scope") ++out_of_scope;
    }
    CHECK(out_of_scope == 1);
    CHECK(report.rows[4].system == "disordered_chain_cooling");
    // Sommerfeld row and the synthetic self-check must agree with the table
    CHECK(report.rows[2].verdict == "agree");
    CHECK(std::abs(report.rows[5].fitted_exponent - 3.0) <= 0.09 * 3.0);
    CHECK(report.to_csv().find("disordered") != std::string::npos);
    CHECK(!report.to_text().empty());
}
