#include "helm/config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace helm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: value of '" + key + "' is not a number: " + v);
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: value of '" + key + "' is not an integer: " + v);
    }
}

}  // namespace

const std::map<std::string, std::vector<std::string>>& command_table() {
    static const std::map<std::string, std::vector<std::string>> table = {
        {"partition-check", {"fields", "tolerance"}},
        {"besov-props", {"samples"}},
        {"paraproduct-check",
         {"pairs", "lambda_list", "samples", "eta", "stability"}},
        {"resolvent-apply", {"k", "gamma_abs", "tau", "s", "fields"}},
        {"shell-split-check", {"k", "gamma_abs", "s", "eps0", "tau", "pairs"}},
        {"lap-check", {"k", "fields", "tolerance"}},
        {"sweep-thmF",
         {"k_list", "gamma_abs_list", "r", "s_list", "eta", "lambda_list",
          "samples", "stability"}},
        {"sweep-Hsg",
         {"k_list", "gamma_abs_list", "p1", "p2", "q", "r", "eta",
          "lambda_list", "samples", "stability"}},
        {"sweep-PHLp",
         {"k_list", "gamma_abs_list", "p0", "eta", "samples", "stability"}},
        {"scaling-sweep",
         {"r", "p", "q", "eta", "lambda_list", "stability", "fixture"}},
        {"solve",
         {"k", "R", "lambda", "auto_lambda", "coeff", "coeff_amp", "alpha",
          "gamma_abs", "tol", "max_iter", "backend"}},
        {"dual-lambda-check",
         {"k", "R", "lambda1", "lambda2", "coeff", "coeff_amp", "tol",
          "max_iter", "tolerance", "backend"}},
        {"manufactured-check",
         {"k", "R", "coeff", "coeff_amp", "tol", "max_iter", "tolerance"}},
    };
    return table;
}

RunConfig parse_config(const std::string& text) {
    RunConfig rc;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    std::map<std::string, std::string> grid_kv, run_kv;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            section = trim(s.substr(1, s.size() - 2));
            if (section != "grid" && section != "run" && section != "params")
                throw ConfigError("config: unknown section '" + section + "'");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value' at line " +
                              std::to_string(lineno));
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: empty key at line " + std::to_string(lineno));
        if (section == "grid") {
            if (key != "d" && key != "N" && key != "L")
                throw ConfigError("config: unknown key '" + key + "' in [grid]");
            grid_kv[key] = value;
        } else if (section == "run") {
            if (key != "command" && key != "seed" && key != "out")
                throw ConfigError("config: unknown key '" + key + "' in [run]");
            run_kv[key] = value;
        } else if (section == "params") {
            rc.params[key] = value;
        } else {
            throw ConfigError("config: key '" + key + "' outside any section");
        }
    }

    if (grid_kv.count("d")) rc.d = static_cast<int>(parse_int("d", grid_kv["d"]));
    else rc.defaults_used.push_back("grid.d = 2");
    if (grid_kv.count("N")) rc.N = static_cast<int>(parse_int("N", grid_kv["N"]));
    else rc.defaults_used.push_back("grid.N = 128");
    if (grid_kv.count("L")) rc.L = parse_double("L", grid_kv["L"]);
    else rc.defaults_used.push_back("grid.L = 4");
    try {
        (void)rc.grid();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    if (!run_kv.count("command"))
        throw ConfigError("config: missing mandatory key 'command' in [run]");
    rc.command = run_kv["command"];
    const auto& table = command_table();
    const auto cmd = table.find(rc.command);
    if (cmd == table.end())
        throw ConfigError("config: unknown command '" + rc.command + "'");
    for (const auto& [key, value] : rc.params)
        if (std::find(cmd->second.begin(), cmd->second.end(), key) ==
            cmd->second.end())
            throw ConfigError("config: unknown key '" + key + "' for command '" +
                              rc.command + "'");

    if (run_kv.count("seed")) {
        rc.seed = static_cast<std::uint64_t>(parse_int("seed", run_kv["seed"]));
        rc.seed_set = true;
    } else {
        // Every command draws at least one randomized fixture; the seed is
        // mandatory so reruns are reproducible.
        throw ConfigError("config: missing mandatory key 'seed' in [run]");
    }
    if (run_kv.count("out")) rc.out = run_kv["out"];
    else rc.defaults_used.push_back("run.out = out.csv");
    return rc;
}

double RunConfig::get_double(const std::string& key, double fallback) {
    const auto it = params.find(key);
    if (it == params.end()) {
        defaults_used.push_back("params." + key);
        return fallback;
    }
    return parse_double(key, it->second);
}

int RunConfig::get_int(const std::string& key, int fallback) {
    const auto it = params.find(key);
    if (it == params.end()) {
        defaults_used.push_back("params." + key);
        return fallback;
    }
    return static_cast<int>(parse_int(key, it->second));
}

bool RunConfig::get_bool(const std::string& key, bool fallback) {
    const auto it = params.find(key);
    if (it == params.end()) {
        defaults_used.push_back("params." + key);
        return fallback;
    }
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigError("config: value of '" + key + "' is not a boolean");
}

std::string RunConfig::get_string(const std::string& key,
                                  const std::string& fallback) {
    const auto it = params.find(key);
    if (it == params.end()) {
        defaults_used.push_back("params." + key);
        return fallback;
    }
    return it->second;
}

std::vector<double> RunConfig::get_list(const std::string& key,
                                        const std::vector<double>& fallback) {
    const auto it = params.find(key);
    if (it == params.end()) {
        defaults_used.push_back("params." + key);
        return fallback;
    }
    std::vector<double> out;
    std::string item;
    std::istringstream ss(it->second);
    while (std::getline(ss, item, ',')) {
        const std::string v = trim(item);
        if (!v.empty()) out.push_back(parse_double(key, v));
    }
    return out;
}

}  // namespace helm
