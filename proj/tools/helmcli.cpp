#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "helm/config.hpp"
#include "helm/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"helmcli — spectral Helmholtz operator-calculus tool"};
    std::string config_path;
    std::string out_override;
    long long seed_override = -1;
    int threads = 1;
    app.add_option("--config", config_path, "Path to the run configuration file")
        ->required();
    app.add_option("--out", out_override,
                   "Override the output CSV path from the config");
    app.add_option("--seed", seed_override, "Override the RNG seed");
    app.add_option("--threads", threads,
                   "Advisory thread count (computation is single-threaded)");
    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "config error: cannot open " << config_path << "\n";
            return 2;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        helm::RunConfig rc = helm::parse_config(buf.str());
        if (!out_override.empty()) rc.out = out_override;
        if (seed_override >= 0) {
            rc.seed = static_cast<std::uint64_t>(seed_override);
            rc.seed_set = true;
        }
        const int code = helm::run_command(rc);
        if (code == 0)
            std::cout << "PASS " << rc.command << " -> " << rc.out << "\n";
        else
            std::cout << "FAIL " << rc.command << " -> " << rc.out << "\n";
        return code;
    } catch (const helm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
