#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "helm/grid.hpp"

namespace helm {

inline constexpr const char* tool_version = "1.0.0";

/** Thrown for malformed or inconsistent configuration (CLI exit code 2). */
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * RunConfig: parsed and validated command configuration.
 *
 * Config files are line-oriented `key = value` with `[section]` headers and
 * `#` comments.  Sections: [grid] (d, N, L), [run] (command, seed, out),
 * [params] (command-specific, validated against a per-command key table).
 */
struct RunConfig {
    int d = 2;
    int N = 128;
    double L = 4.0;
    std::string command;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out = "out.csv";
    std::map<std::string, std::string> params;
    std::vector<std::string> defaults_used;  // provenance of filled defaults

    Grid grid() const { return make_grid(d, N, L); }

    // Typed parameter access with defaults (records provenance).
    double get_double(const std::string& key, double fallback);
    int get_int(const std::string& key, int fallback);
    bool get_bool(const std::string& key, bool fallback);
    std::string get_string(const std::string& key, const std::string& fallback);
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& fallback);
};

/** Parse and validate a config file's text (throws ConfigError). */
RunConfig parse_config(const std::string& text);

/** The commands known to run_command, with their allowed parameter keys. */
const std::map<std::string, std::vector<std::string>>& command_table();

}  // namespace helm
