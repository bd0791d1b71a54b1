#include "config.hpp"

#include "rta/fermion.hpp"
#include "rta/hilbert.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace rta::cli {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + message);
}

double to_double(const std::string& value, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + value + "'");
    }
    if (pos != value.size()) fail(line, "trailing characters in number '" + value + "'");
    return v;
}

int to_int(const std::string& value, int line) {
    const double v = to_double(value, line);
    const int i = static_cast<int>(v);
    if (double(i) != v) fail(line, "expected an integer, got '" + value + "'");
    return i;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> map = {
        {"model", [](RunConfig& c, const std::string& v, int ln) {
             if (v != "fermion_chain" && v != "explicit_matrix")
                 fail(ln, "model must be fermion_chain or explicit_matrix");
             c.model = v;
         }},
        {"L", [](RunConfig& c, const std::string& v, int ln) { c.chain_length = to_int(v, ln); }},
        {"t_hop", [](RunConfig& c, const std::string& v, int ln) { c.t_hop = to_double(v, ln); }},
        {"matrix_file", [](RunConfig& c, const std::string& v, int) { c.matrix_file = v; }},
        {"beta", [](RunConfig& c, const std::string& v, int ln) { c.beta = to_double(v, ln); }},
        {"gamma0", [](RunConfig& c, const std::string& v, int ln) { c.gamma0 = to_double(v, ln); }},
        {"schedule", [](RunConfig& c, const std::string& v, int ln) {
             if (v != "constant" && v != "linear_cooling" && v != "linear_heating")
                 fail(ln, "schedule must be constant, linear_cooling or linear_heating");
             c.schedule = v;
         }},
        {"T0", [](RunConfig& c, const std::string& v, int ln) { c.t0 = to_double(v, ln); }},
        {"T_crit", [](RunConfig& c, const std::string& v, int ln) { c.t_crit = to_double(v, ln); }},
        {"tau", [](RunConfig& c, const std::string& v, int ln) { c.tau = to_double(v, ln); }},
        {"t_max", [](RunConfig& c, const std::string& v, int ln) { c.t_max = to_double(v, ln); }},
        {"n_points", [](RunConfig& c, const std::string& v, int ln) { c.n_points = to_int(v, ln); }},
        {"step", [](RunConfig& c, const std::string& v, int ln) { c.step = to_double(v, ln); }},
        {"observables", [](RunConfig& c, const std::string& v, int) { c.observables = split_list(v); }},
        {"curve", [](RunConfig& c, const std::string& v, int ln) {
             static const std::set<std::string> kinds{"power_law", "bose_box", "bose_trap",
                                                      "fermi_3d", "chain"};
             if (!kinds.count(v)) fail(ln, "unknown curve '" + v + "'");
             c.curve = v;
         }},
        {"psi", [](RunConfig& c, const std::string& v, int ln) { c.psi = to_double(v, ln); }},
        {"family", [](RunConfig& c, const std::string& v, int ln) {
             if (v != "heating" && v != "cooling") fail(ln, "family must be heating or cooling");
             c.family = v;
         }},
        {"temperature_scale",
         [](RunConfig& c, const std::string& v, int ln) { c.temperature_scale = to_double(v, ln); }},
        {"tau_min", [](RunConfig& c, const std::string& v, int ln) { c.tau_min = to_double(v, ln); }},
        {"tau_max", [](RunConfig& c, const std::string& v, int ln) { c.tau_max = to_double(v, ln); }},
        {"tau_points", [](RunConfig& c, const std::string& v, int ln) { c.tau_points = to_int(v, ln); }},
        {"site", [](RunConfig& c, const std::string& v, int ln) { c.site = to_int(v, ln); }},
        {"eps_an", [](RunConfig& c, const std::string& v, int ln) { c.eps_an = to_double(v, ln); }},
        {"eps_cr", [](RunConfig& c, const std::string& v, int ln) { c.eps_cr = to_double(v, ln); }},
        {"gamma0_tau_min",
         [](RunConfig& c, const std::string& v, int ln) { c.gamma0_tau_min = to_double(v, ln); }},
        {"gamma0_tau_max",
         [](RunConfig& c, const std::string& v, int ln) { c.gamma0_tau_max = to_double(v, ln); }},
        {"table1_tau_points",
         [](RunConfig& c, const std::string& v, int ln) { c.table1_tau_points = to_int(v, ln); }},
        {"table1_chain_length",
         [](RunConfig& c, const std::string& v, int ln) { c.table1_chain_length = to_int(v, ln); }},
        {"fermi_T0", [](RunConfig& c, const std::string& v, int ln) { c.fermi_t0 = to_double(v, ln); }},
        {"chain_T0", [](RunConfig& c, const std::string& v, int ln) { c.chain_t0 = to_double(v, ln); }},
    };
    return map;
}

const std::map<std::string, std::set<std::string>>& allowed_keys() {
    static const std::set<std::string> model_keys{"model", "L", "t_hop", "matrix_file"};
    static const std::map<std::string, std::set<std::string>> map = [] {
        std::map<std::string, std::set<std::string>> m;
        auto with_model = [](std::set<std::string> extra) {
            extra.insert(model_keys.begin(), model_keys.end());
            return extra;
        };
        m["evolve"] = with_model({"beta", "gamma0", "schedule", "T0", "T_crit", "tau",
                                  "t_max", "n_points", "step", "observables"});
        m["quench"] = with_model({"gamma0", "schedule", "T0", "T_crit", "tau", "n_points",
                                  "observables"});
        m["scaling"] = {"curve",   "psi",      "family",    "temperature_scale",
                        "gamma0",  "tau_min",  "tau_max",   "tau_points",
                        "L",       "t_hop",    "T_crit"};
        m["perturb"] = {"L", "t_hop", "site", "eps_an", "eps_cr", "beta", "gamma0"};
        m["table1"] = {"gamma0",        "gamma0_tau_min",     "gamma0_tau_max",
                       "table1_tau_points", "table1_chain_length", "t_hop",
                       "fermi_T0",      "chain_T0"};
        m["validate"] = {};
        return m;
    }();
    return map;
}

void validate_ranges(const RunConfig& c) {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw std::invalid_argument("config: " + msg);
    };
    require(c.gamma0 > 0.0, "gamma0 must be > 0");
    require(c.beta >= 0.0, "beta must be >= 0");
    require(c.tau > 0.0, "tau must be > 0");
    require(c.t0 >= 0.0 && c.t_crit >= 0.0, "temperatures must be >= 0");
    require(c.n_points >= 2, "n_points must be >= 2");
    require(c.step >= 0.0, "step must be >= 0");
    if (c.model == "fermion_chain") {
        require(c.chain_length >= 1 && c.chain_length <= kMaxChainLength,
                "L must be in [1, " + std::to_string(kMaxChainLength) + "]");
    }
    if (c.model == "explicit_matrix") {
        require(!c.matrix_file.empty(), "matrix_file is required for explicit_matrix");
        std::ifstream probe(c.matrix_file);
        require(probe.good(), "matrix_file does not exist: " + c.matrix_file);
    }
    if (c.command == "scaling") {
        require(c.tau_min > 0.0 && c.tau_max > c.tau_min, "need 0 < tau_min < tau_max");
        require(c.tau_points >= 8, "tau_points must be >= 8");
        require(c.temperature_scale > 0.0, "temperature_scale must be > 0");
    }
    if (c.command == "perturb") {
        require(c.site >= 1 && c.site <= c.chain_length, "site must be in [1, L]");
        require(c.eps_an >= 0.0 && c.eps_cr >= 0.0, "epsilons must be >= 0");
        require(c.chain_length <= 6, "perturb needs L <= 6 (dense superoperator oracle)");
    }
    if (c.command == "table1") {
        require(c.gamma0_tau_min > 0.0 && c.gamma0_tau_max > c.gamma0_tau_min,
                "need 0 < gamma0_tau_min < gamma0_tau_max");
        require(c.table1_tau_points >= 8, "table1_tau_points must be >= 8");
    }
}

Complex parse_complex_token(const std::string& token, int line) {
    std::string s = token;
    if (s.empty()) fail(line, "empty matrix entry");
    if (s.back() != 'j') {
        return Complex(to_double(s, line), 0.0);
    }
    s.pop_back();
    // split at the last top-level +/-, skipping exponent signs and position 0
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        if (s.empty() || s == "+" || s == "-") s += "1";
        return Complex(0.0, to_double(s, line));
    }
    std::string im = s.substr(split);
    if (im == "+" || im == "-") im += "1";
    return Complex(to_double(s.substr(0, split), line), to_double(im, line));
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& command) {
    const auto& allowed_map = allowed_keys();
    auto it = allowed_map.find(command);
    if (it == allowed_map.end()) {
        throw std::invalid_argument("unknown command '" + command + "'");
    }
    const std::set<std::string>& allowed = it->second;

    RunConfig config;
    config.command = command;
    std::istringstream stream(text);
    std::string raw;
    int line = 0;
    std::set<std::string> seen;
    while (std::getline(stream, raw)) {
        ++line;
        const std::string stripped = trim(raw.substr(0, raw.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (!allowed.count(key)) {
            fail(line, "unknown key '" + key + "' for command '" + command + "'");
        }
        if (!seen.insert(key).second) fail(line, "duplicate key '" + key + "'");
        setters().at(key)(config, value, line);
    }
    validate_ranges(config);
    return config;
}

Operator load_explicit_matrix(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::invalid_argument("cannot open matrix file: " + path);
    int n = 0;
    file >> n;
    if (n < 1 || n > 4096) {
        throw std::invalid_argument("matrix file: invalid dimension " + std::to_string(n));
    }
    Operator m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::string token;
            if (!(file >> token)) {
                throw std::invalid_argument("matrix file: unexpected end of data at row " +
                                            std::to_string(i + 1));
            }
            m(i, j) = parse_complex_token(token, i + 2);
        }
    }
    const double defect = hermiticity_defect(m);
    if (defect > 1e-10 * std::max(1.0, m.norm())) {
        throw std::invalid_argument("matrix file: not Hermitian, ||H - H^dag|| = " +
                                    std::to_string(defect));
    }
    return m;
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace rta::cli
