#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef STRATLOC_CLI_PATH
#error "STRATLOC_CLI_PATH must be defined by the build"
#endif
#ifndef STRATLOC_FIXTURES
#error "STRATLOC_FIXTURES must be defined by the build"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs a full shell command, capturing stdout (and stderr when the
// caller folds it in with 2>&1).
RunResult run_raw(const std::string& command) {
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    while (std::size_t n = fread(buffer, 1, sizeof buffer, pipe)) result.output.append(buffer, n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

RunResult run_cli(const std::string& args) {
    return run_raw(std::string(STRATLOC_CLI_PATH) + " " + args);
}

std::string fixture(const std::string& name) {
    return std::string(STRATLOC_FIXTURES) + "/" + name;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("verify-localization reports the pinned identities") {
    auto neg = run_cli("verify-localization " + fixture("a1_neg.json"));
    CHECK(neg.exit_code == 0);
    CHECK(contains(neg.output, "\"identity\": \"1 = 0 + 1\""));
    CHECK(contains(neg.output, "\"verdict\": \"verified\""));

    auto pos = run_cli("verify-localization " + fixture("a1_pos.json"));
    CHECK(pos.exit_code == 0);
    CHECK(contains(pos.output, "\"identity\": \"1 = 1 + 0\""));

    auto hyper = run_cli("verify-localization " + fixture("hyperbola.json"));
    CHECK(hyper.exit_code == 0);
    CHECK(contains(hyper.output, "\"identity\": \"1 = 1 + 0\""));
    CHECK(contains(hyper.output, "\"method\": \"chains\""));
}

TEST_CASE("chi backends and the inapplicable exit code") {
    auto series = run_cli("chi " + fixture("a1_pos.json") + " --sheaf " + fixture("twist2.json"));
    CHECK(series.exit_code == 0);
    CHECK(contains(series.output, "\"chi\": 1"));
    CHECK(contains(series.output, "\"method\": \"series\""));

    auto refused = run_cli("chi " + fixture("hyperbola.json") + " --method series 2>&1");
    CHECK(refused.exit_code == 2);
    CHECK(contains(refused.output, "series oracle inapplicable"));

    auto fallback = run_cli("chi " + fixture("hyperbola.json"));
    CHECK(fallback.exit_code == 0);
    CHECK(contains(fallback.output, "\"method\": \"chains\""));
}

TEST_CASE("input diagnostics name the offending field") {
    auto bad = run_cli("validate " + fixture("bad_weight.json") + " 2>&1");
    CHECK(bad.exit_code == 3);
    CHECK(contains(bad.output, "'x'"));

    std::string garbled = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                          "/stratloc_garbled.json";
    std::ofstream(garbled) << "{ not json";
    auto parse = run_cli("validate " + garbled + " 2>&1");
    CHECK(parse.exit_code == 3);
    CHECK(contains(parse.output, "invalid JSON"));
    std::remove(garbled.c_str());

    auto missing = run_cli("wallcross " + fixture("a2_skew.json") + " 2>&1");
    CHECK(missing.exit_code == 3);
    CHECK(contains(missing.output, "--lambda"));

    auto window = run_cli("windows " + fixture("hyperbola.json") + " --window nonsense 2>&1");
    CHECK(window.exit_code == 3);

    auto none = run_cli("2>&1");
    CHECK(none.exit_code == 3);
}

TEST_CASE("structural commands emit the expected fields") {
    auto strat = run_cli("stratify " + fixture("hyperbola.json") + " --format table");
    CHECK(strat.exit_code == 0);
    CHECK(contains(strat.output, "strata[0].serre_a = -1"));
    CHECK(contains(strat.output, "strata[0].killed[0] = x"));
    CHECK(contains(strat.output, "strata[0].mu_squared = 1"));

    auto wall = run_cli("wallcross " + fixture("a2_skew.json") + " --lambda 1");
    CHECK(wall.exit_code == 0);
    CHECK(contains(wall.output, "\"c\": 1"));
    CHECK(contains(wall.output, "\"relation\": \"plus_embeds_into_minus\""));

    auto windows = run_cli("windows " + fixture("hyperbola.json") + " --window 0");
    CHECK(windows.exit_code == 0);
    CHECK(contains(windows.output, "\"stabilized_at\": 1"));

    auto duality = run_cli("duality-check " + fixture("hyperbola.json"));
    CHECK(duality.exit_code == 0);
    CHECK(contains(duality.output, "\"ok\": true"));
}

TEST_CASE("output is byte-identical across runs and thread counts") {
    std::string args = "stratify " + fixture("hyperbola.json");
    auto first = run_cli(args);
    auto second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);

    std::string verify =
        std::string(STRATLOC_CLI_PATH) + " verify-localization " + fixture("hyperbola.json");
    auto one = run_raw("STRATLOC_THREADS=1 " + verify);
    auto four = run_raw("STRATLOC_THREADS=4 " + verify);
    CHECK(one.exit_code == 0);
    CHECK(one.output == four.output);
}
