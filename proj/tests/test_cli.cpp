#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "helm/config.hpp"
#include "helm/runner.hpp"

using namespace helm;

namespace {

std::string read_all(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* base_cfg = R"(
[grid]
d = 2
N = 16
L = 4.0

[run]
command = partition-check
seed = 7
out = OUTPATH

[params]
fields = 2
)";

std::string with_out(const std::string& text, const std::string& out) {
    std::string s = text;
    const auto pos = s.find("OUTPATH");
    s.replace(pos, 7, out);
    return s;
}

}  // namespace

TEST_CASE("config parses sections, comments, and defaults") {
    RunConfig rc = parse_config(with_out(base_cfg, "/tmp/pc.csv"));
    CHECK(rc.d == 2);
    CHECK(rc.N == 16);
    CHECK(rc.L == doctest::Approx(4.0));
    CHECK(rc.command == "partition-check");
    CHECK(rc.seed == 7);
    CHECK(rc.out == "/tmp/pc.csv");
    CHECK(rc.get_int("fields", 99) == 2);
    CHECK(rc.get_double("tolerance", 1e-10) == doctest::Approx(1e-10));
    // The fallback access is recorded as provenance.
    bool recorded = false;
    for (const auto& s : rc.defaults_used)
        if (s.find("tolerance") != std::string::npos) recorded = true;
    CHECK(recorded);
}

TEST_CASE("config rejects unknown commands, keys, and missing seed") {
    CHECK_THROWS_AS(parse_config("[run]\ncommand = bogus\nseed = 1\n"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config("[run]\ncommand = partition-check\nseed = 1\n"
                     "[params]\nnonsense = 3\n"),
        ConfigError);
    CHECK_THROWS_AS(parse_config("[run]\ncommand = partition-check\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("[junk]\nx = 1\n"), ConfigError);
}

TEST_CASE("config validates grid values") {
    CHECK_THROWS_AS(
        parse_config("[grid]\nd = 5\n[run]\ncommand = partition-check\nseed = 1\n"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config("[grid]\nN = 9\n[run]\ncommand = partition-check\nseed = 1\n"),
        ConfigError);
}

TEST_CASE("partition-check runs, passes, and writes a deterministic CSV") {
    const std::string out1 = "/tmp/helm_cli_t1.csv";
    const std::string out2 = "/tmp/helm_cli_t2.csv";
    RunConfig rc1 = parse_config(with_out(base_cfg, out1));
    RunConfig rc2 = parse_config(with_out(base_cfg, out2));
    CHECK(run_command(rc1) == 0);
    CHECK(run_command(rc2) == 0);
    const std::string a = read_all(out1);
    const std::string b = read_all(out2);
    CHECK(!a.empty());
    CHECK(a == b);  // byte-identical reruns
    // Header row, then the provenance comment row.
    CHECK(a.rfind("check,", 0) == 0);
    CHECK(a.find("\n# grid=d2N16L4 seed=7 version=") != std::string::npos);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("csv floats carry full precision") {
    const std::string out = "/tmp/helm_cli_t3.csv";
    std::string cfg = R"(
[grid]
d = 2
N = 16
L = 4.0
[run]
command = resolvent-apply
seed = 3
out = )" + out + R"(
[params]
fields = 1
tau = 0.012345678901234567
)";
    RunConfig rc = parse_config(cfg);
    CHECK(run_command(rc) == 0);
    const std::string text = read_all(out);
    // At least one value printed with > 12 significant digits.
    bool long_float = false;
    std::size_t pos = 0;
    while ((pos = text.find('.', pos)) != std::string::npos) {
        std::size_t digits = 0;
        std::size_t q = pos + 1;
        while (q < text.size() && (std::isdigit(text[q]) || text[q] == 'e' ||
                                   text[q] == '-' || text[q] == '+')) {
            if (std::isdigit(text[q])) ++digits;
            ++q;
        }
        if (digits >= 12) long_float = true;
        pos = q;
    }
    CHECK(long_float);
    std::remove(out.c_str());
}

TEST_CASE("unknown command reaches the runner as a config error") {
    RunConfig rc = parse_config(with_out(base_cfg, "/tmp/helm_cli_t4.csv"));
    rc.command = "not-a-command";
    CHECK_THROWS_AS(run_command(rc), ConfigError);
}

TEST_CASE("list parameters parse comma-separated values") {
    std::string cfg = R"(
[run]
command = sweep-thmF
seed = 5
out = /tmp/helm_cli_t5.csv
[params]
k_list = 0.5, 1.0, 2.0
)";
    RunConfig rc = parse_config(cfg);
    auto ks = rc.get_list("k_list", {});
    REQUIRE(ks.size() == 3);
    CHECK(ks[0] == doctest::Approx(0.5));
    CHECK(ks[2] == doctest::Approx(2.0));
}
