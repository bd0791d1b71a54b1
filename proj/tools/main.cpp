#include "config.hpp"

#include "rta/fermion.hpp"
#include "rta/hilbert.hpp"
#include "rta/lindblad.hpp"
#include "rta/perturbation.hpp"
#include "rta/quench.hpp"
#include "rta/scaling.hpp"
#include "rta/validate.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rta::cli {
namespace {

namespace fs = std::filesystem;

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvWriter {
    std::ostringstream body;

    CsvWriter(std::uint64_t config_hash, const std::vector<std::string>& columns) {
        char hash[24];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(config_hash));
        body << "# config_hash=" << hash << " version=" << kToolVersion << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) {
            body << (i ? "," : "") << columns[i];
        }
        body << "\n";
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            body << (i ? "," : "") << format_value(values[i]);
        }
        body << "\n";
    }

    void save(const fs::path& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << body.str();
        std::cout << "wrote " << path.string() << "\n";
    }
};

Operator build_model(const RunConfig& config) {
    if (config.model == "fermion_chain") {
        return build_fermion_chain(config.chain_length, config.t_hop);
    }
    return load_explicit_matrix(config.matrix_file);
}

TemperatureSchedule make_schedule(const RunConfig& config) {
    if (config.schedule == "linear_cooling") {
        return TemperatureSchedule::linear_cooling(config.t0, config.tau);
    }
    if (config.schedule == "linear_heating") {
        return TemperatureSchedule::linear_heating(config.t_crit, config.tau);
    }
    return TemperatureSchedule::constant(config.t0, config.tau);
}

struct NamedObservable {
    std::string name;
    Operator op;
};

std::vector<NamedObservable> build_observables(const RunConfig& config, const Operator& h) {
    std::vector<NamedObservable> out;
    for (const std::string& token : config.observables) {
        if (token == "energy") {
            out.push_back({"energy", h});
        } else if (token.rfind("n_k:", 0) == 0) {
            if (config.model != "fermion_chain") {
                throw std::invalid_argument("observable '" + token +
                                            "' needs model = fermion_chain");
            }
            const int k = std::stoi(token.substr(4));
            if (k < 1 || k > config.chain_length) {
                throw std::invalid_argument("observable '" + token + "': k out of range");
            }
            out.push_back({"n_k" + std::to_string(k),
                           fermion_mode_number(config.chain_length, k)});
        } else {
            throw std::invalid_argument("unknown observable '" + token +
                                        "' (expected energy or n_k:<k>)");
        }
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / (n - 1);
    return v;
}

void run_evolve(const RunConfig& config, std::uint64_t hash, const fs::path& outdir) {
    const Operator h = build_model(config);
    const Spectrum spec = eig_hermitian(h);
    const bool scheduled = config.schedule != "none";

    RtaTerm rta{InverseTemperature(config.beta), config.gamma0, spec, {}};
    if (scheduled) {
        const TemperatureSchedule schedule = make_schedule(config);
        rta.beta = schedule.beta_at(0.0);
        rta.beta_of_t = [schedule](double t) { return schedule.beta_at(t); };
    }
    LindbladGenerator gen{h, {}, rta};
    const DensityMatrix rho0 = gibbs_state(spec, rta.beta);

    const double t_max = config.t_max > 0.0
                             ? config.t_max
                             : (scheduled ? config.tau : 5.0 / config.gamma0);
    std::vector<double> times = linspace(0.0, t_max, config.n_points);
    const double step = config.step > 0.0 ? config.step : default_step(gen);
    const Trajectory traj = evolve(gen, rho0, times, step);

    const auto observables = build_observables(config, h);
    std::vector<std::string> columns{"t"};
    for (const auto& o : observables) columns.push_back(o.name);
    columns.push_back("trace");
    columns.push_back("min_eigenvalue");
    CsvWriter csv(hash, columns);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        std::vector<double> row{traj.times[i]};
        for (const auto& o : observables) {
            row.push_back(expectation(traj.states[i], o.op).real());
        }
        row.push_back(traj.raw_traces[i]);
        row.push_back(traj.states[i].min_eigenvalue());
        csv.row(row);
    }
    csv.save(outdir / "evolve.csv");
}

void run_quench(const RunConfig& config, std::uint64_t hash, const fs::path& outdir) {
    const Operator h = build_model(config);
    const Spectrum spec = eig_hermitian(h);
    const TemperatureSchedule schedule = make_schedule(config);
    const auto observables = build_observables(config, h);

    std::vector<std::string> columns{"t"};
    for (const auto& o : observables) columns.push_back(o.name);
    CsvWriter csv(hash, columns);
    for (double t : linspace(0.0, schedule.tau(), config.n_points)) {
        const DensityMatrix rho = quench_state(spec, schedule, config.gamma0, t);
        std::vector<double> row{t};
        for (const auto& o : observables) row.push_back(expectation(rho, o.op).real());
        csv.row(row);
    }
    csv.save(outdir / "quench.csv");
}

void run_scaling(const RunConfig& config, std::uint64_t hash, const fs::path& outdir) {
    EquilibriumCurve curve;
    if (config.curve == "power_law") {
        curve = power_law_curve(config.psi, config.t_crit);
    } else if (config.curve == "bose_box") {
        curve = bose_box(config.temperature_scale);
    } else if (config.curve == "bose_trap") {
        curve = bose_trap(config.temperature_scale);
    } else if (config.curve == "fermi_3d") {
        curve = fermi_residual_energy_3d();
    } else {
        curve = chain_excitation_number(config.chain_length, config.t_hop);
    }
    ScalingExperiment exp{curve,
                          config.family == "cooling" ? ScheduleFamily::Cooling
                                                     : ScheduleFamily::Heating,
                          config.gamma0,
                          log_tau_grid(config.tau_min, config.tau_max, config.tau_points),
                          config.temperature_scale};
    const auto table = run_experiment(exp);

    CsvWriter csv(hash, {"tau", "value"});
    for (const auto& [tau, value] : table) csv.row({tau, value});
    csv.save(outdir / "scaling.csv");

    const ScalingFit fit = fit_exponent(table);
    std::ofstream summary(outdir / "scaling_fit.txt", std::ios::binary);
    summary << "curve = " << curve.label << "\n"
            << "exponent = " << format_value(fit.exponent) << "\n"
            << "stderr = " << format_value(fit.stderr_) << "\n"
            << "window = [" << format_value(fit.window.first) << ", "
            << format_value(fit.window.second) << "]\n"
            << "r_squared = " << format_value(fit.r_squared) << "\n";
    std::cout << "wrote " << (outdir / "scaling_fit.txt").string() << "\n";
}

void run_perturb(const RunConfig& config, std::uint64_t hash, const fs::path& outdir) {
    const int length = config.chain_length;
    const Spectrum spec = eig_hermitian(build_fermion_chain(length, config.t_hop));
    const InverseTemperature beta(config.beta);
    const LocalReservoirPair cfg{config.site, config.eps_an, config.eps_cr, length,
                                 config.t_hop};
    const PerturbationSetup setup{spec, beta, config.gamma0, local_reservoir_jumps(cfg)};

    // exact steady-state oracle with the epsilons folded into the jumps
    LindbladGenerator gen{spec.reconstruct(), {}, RtaTerm{beta, config.gamma0, spec, {}}};
    for (const auto& [op, eps] : setup.perturbing_jumps) {
        if (eps > 0.0) gen.jumps.push_back({std::sqrt(eps) * op});
    }
    const DensityMatrix rho_ss = steady_state(gen);
    const DensityMatrix rho_gibbs = gibbs_state(spec, beta);

    CsvWriter csv(hash, {"k", "delta_nk_closed", "delta_generic", "exact_oracle", "abs_err"});
    for (int k = 1; k <= length; ++k) {
        const Operator nk = fermion_mode_number(length, k);
        const double closed = delta_nk_closed_form(cfg, k, beta, config.gamma0);
        const double generic = delta_expectation(nk, setup);
        const double exact =
            expectation(rho_ss, nk).real() - expectation(rho_gibbs, nk).real();
        csv.row({double(k), closed, generic, exact, std::abs(generic - exact)});
    }
    csv.save(outdir / "perturb.csv");
}

void run_table1(const RunConfig& config, std::uint64_t hash, const fs::path& outdir) {
    Table1Options opts;
    opts.gamma0_tau_min = config.gamma0_tau_min;
    opts.gamma0_tau_max = config.gamma0_tau_max;
    opts.tau_points = config.table1_tau_points;
    opts.chain_length = config.table1_chain_length;
    opts.chain_t_hop = config.t_hop;
    opts.fermi_t0 = config.fermi_t0;
    opts.chain_t0 = config.chain_t0;
    const Table1Report report = table1_report(config.gamma0, opts);

    char hashbuf[24];
    std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                  static_cast<unsigned long long>(hash));
    std::ofstream csv(outdir / "table1.csv", std::ios::binary);
    csv << "# config_hash=" << hashbuf << " version=" << kToolVersion << "\n"
        << report.to_csv();
    std::cout << "wrote " << (outdir / "table1.csv").string() << "\n";
    std::cout << report.to_text();
}

int run_validate(std::uint64_t seed, const fs::path& outdir) {
    const ValidationResult result = run_validation(seed);
    std::ofstream out(outdir / "validate.txt", std::ios::binary);
    for (const std::string& line : result.lines) {
        std::cout << line << "\n";
        out << line << "\n";
    }
    std::cout << "passed: " << result.passed << ", failed: " << result.failed << "\n";
    out << "passed: " << result.passed << ", failed: " << result.failed << "\n";
    return result.ok() ? 0 : 1;
}

int main_impl(int argc, char** argv) {
    CLI::App app{"RTA-Lindblad simulation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir = ".";
    int threads = 0;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "config file path");
        if (needs_config) opt->required();
        sub->add_option("--output", output_dir, "output directory");
        sub->add_option("--threads", threads, "worker threads (0 = auto)");
        sub->add_option("--seed", seed, "seed for randomized validation suites");
    };
    for (const char* name : {"evolve", "quench", "scaling", "perturb", "table1"}) {
        add_common(app.add_subcommand(name), true);
    }
    add_common(app.add_subcommand("validate", "run the invariant suite"), false);

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    if (threads > 0) Eigen::setNbThreads(threads);
    const fs::path outdir(output_dir);
    fs::create_directories(outdir);

    try {
        if (command == "validate") return run_validate(seed, outdir);

        std::ifstream file(config_path);
        if (!file) {
            std::cerr << "error: cannot open config file " << config_path << "\n";
            return 1;
        }
        std::stringstream buffer;
        buffer << file.rdbuf();
        const std::string text = buffer.str();
        const RunConfig config = parse_config(text, command);
        const std::uint64_t hash = fnv1a_hash(text);

        if (command == "evolve") run_evolve(config, hash, outdir);
        else if (command == "quench") run_quench(config, hash, outdir);
        else if (command == "scaling") run_scaling(config, hash, outdir);
        else if (command == "perturb") run_perturb(config, hash, outdir);
        else if (command == "table1") run_table1(config, hash, outdir);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace
}  // namespace rta::cli

int main(int argc, char** argv) { return rta::cli::main_impl(argc, argv); }
