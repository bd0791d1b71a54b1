#pragma once

#include "rta/types.hpp"

#include <string>
#include <vector>

namespace rta::cli {

// Flat key = value configuration, one assignment per line, '#' comments.
// Unknown keys are rejected with the offending line number; every command
// documents its key set in the README. Defaults: gamma0 = 1, beta = 1,
// t_hop = 1.
struct RunConfig {
    std::string command;

    // model
    std::string model = "fermion_chain";  // fermion_chain | explicit_matrix
    int chain_length = 4;
    double t_hop = 1.0;
    std::string matrix_file;

    // environment
    double beta = 1.0;
    double gamma0 = 1.0;

    // temperature schedule (evolve, quench)
    std::string schedule = "none";  // none | constant | linear_cooling | linear_heating
    double t0 = 1.0;
    double t_crit = 1.0;
    double tau = 1.0;

    // trajectory sampling (evolve, quench)
    double t_max = -1.0;  // < 0: defaults to tau when a schedule is set
    int n_points = 21;
    double step = 0.0;  // 0: automatic
    std::vector<std::string> observables{"energy"};

    // scaling
    std::string curve = "power_law";  // power_law | bose_box | bose_trap | fermi_3d | chain
    double psi = 1.0;
    std::string family = "heating";  // heating | cooling
    double temperature_scale = 1.0;
    double tau_min = 1e2;
    double tau_max = 1e4;
    int tau_points = 10;

    // perturb
    int site = 1;
    double eps_an = 0.0;
    double eps_cr = 0.0;

    // table1
    double gamma0_tau_min = 1e2;
    double gamma0_tau_max = 1e4;
    int table1_tau_points = 10;
    int table1_chain_length = 8;
    double fermi_t0 = 0.1;
    double chain_t0 = 1.0;
};

RunConfig parse_config(const std::string& text, const std::string& command);

// Plain-text complex matrix: first line N, then N rows of N entries written
// as "re+imj" (e.g. 0.5-0.25j). Rejected with the Hermiticity norm when the
// matrix is not Hermitian.
Operator load_explicit_matrix(const std::string& path);

std::uint64_t fnv1a_hash(const std::string& text);

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace rta::cli
