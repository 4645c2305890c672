#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_in_process(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    args.insert(args.begin(), "norlund");
    const int code = norlund::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string shell_quote(const std::string& arg)
{
    std::string quoted = "'";
    for (char c : arg) {
        if (c == '\'') {
            quoted += "'\\''";
        } else {
            quoted += c;
        }
    }
    return quoted + "'";
}

Run run_binary(const std::vector<std::string>& args)
{
    std::string command = shell_quote(NORLUND_CLI_PATH);
    for (const auto& arg : args) {
        command += ' ' + shell_quote(arg);
    }
    command += " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buffer[4096];
    while (const std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe)) {
        out.append(buffer, n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, {}};
}

json single_line_json(const std::string& out)
{
    REQUIRE(!out.empty());
    REQUIRE(out.back() == '\n');
    REQUIRE(out.find('\n') == out.size() - 1);
    return json::parse(out);
}

std::vector<std::string> with_json(std::vector<std::string> args)
{
    args.push_back("--json");
    return args;
}

void flatten(const json& value, const std::string& prefix, std::vector<std::pair<std::string, json>>& out)
{
    if (value.is_object() && !value.empty()) {
        for (const auto& [key, child] : value.items()) {
            flatten(child, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else if (value.is_array() && !value.empty()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            flatten(value[i], prefix + "[" + std::to_string(i) + "]", out);
        }
    } else {
        out.emplace_back(prefix, value);
    }
}

const std::vector<std::string> inverse_square_example = {"eval", "--expr", "1/t^2", "--a", "1", "--b", "3",
                                                "--alpha", "2", "--beta", "2"};

} // namespace

TEST_CASE("eval reports the symmetric integral")
{
    const auto r = run_in_process(with_json(inverse_square_example));
    CHECK(r.code == 0);
    const json report = single_line_json(r.out);
    CHECK(std::abs(report["result"]["value"].get<double>() - 10.0 / 9.0) <= 1e-12);
    CHECK(report["result"]["mode_used"] == "telescoped");
    CHECK(report["status"] == "ok");
}

TEST_CASE("the report has exactly the documented fields")
{
    for (const auto& args : {inverse_square_example,
                             std::vector<std::string>{"diff", "--expr", "t^2", "--t", "2", "--alpha", "1"},
                             std::vector<std::string>{"eval", "--a", "0"}}) {
        const json report = single_line_json(run_in_process(with_json(args)).out);
        std::vector<std::string> keys;
        for (const auto& [key, _] : report.items()) keys.push_back(key);
        CHECK(keys == std::vector<std::string>{"command", "inputs", "result", "status", "diagnostics"});
        CHECK(report["diagnostics"].is_array());
        CHECK(report["inputs"].is_object());
        CHECK(report["result"].is_object());
    }
}

TEST_CASE("exit codes follow the status")
{
    CHECK(run_in_process(inverse_square_example).code == 0);
    CHECK(run_in_process({"eval", "--expr", "1", "--a", "0", "--b", "1", "--alpha", "1", "--beta", "0",
                          "--mode", "strict"}).code == 2);
    CHECK(run_in_process({"check", "--kind", "holder", "--f", "2^(-abs(t))", "--g", "exp(-t^2)", "--a", "0",
                          "--b", "1", "--alpha", "0.3", "--beta", "0.7", "--p", "2.5"}).code == 1);
    CHECK(run_in_process({"check", "--kind", "ftc", "--f", "1/t^2", "--a", "1", "--b", "5", "--alpha", "2",
                          "--beta", "2", "--residual-tol", "0"}).code == 1);
    CHECK(run_in_process({}).code == 2);
    CHECK(run_in_process({"integrate"}).code == 2);
    CHECK(run_in_process({"eval", "--expr", "t", "--a", "0", "--b", "1", "--alpha", "0", "--beta", "0"}).code == 2);
    CHECK(run_in_process({"eval", "--expr", "t", "--a", "x", "--b", "1", "--alpha", "1", "--beta", "1"}).code == 2);
    CHECK(run_in_process({"eval", "--expr", "t", "--a", "0", "--b", "1", "--alpha", "1", "--beta", "1",
                          "--mode", "fast"}).code == 2);
    CHECK(run_in_process({"diff", "--expr", "t", "--t", "0"}).code == 2);
    CHECK(run_in_process({"check", "--kind", "cs", "--f", "t", "--a", "0", "--b", "1", "--alpha", "1",
                          "--beta", "1"}).code == 2);
    CHECK(run_in_process({"--help"}).code == 0);
}

TEST_CASE("errors are reported on both streams")
{
    const auto r = run_in_process({"eval", "--expr", "1", "--a", "0", "--b", "1", "--alpha", "1", "--beta", "0",
                                   "--mode", "strict"});
    CHECK(r.code == 2);
    CHECK(r.err.find("NotIntegrable") != std::string::npos);
    CHECK(r.out.find("status: error") != std::string::npos);
}

TEST_CASE("diff subcommand")
{
    const auto value = [](std::vector<std::string> args) {
        const auto r = run_in_process(with_json(std::move(args)));
        REQUIRE(r.code == 0);
        return single_line_json(r.out)["result"]["value"].get<double>();
    };
    CHECK(value({"diff", "--expr", "abs(t)", "--t", "0", "--alpha", "1", "--beta", "1"}) == 0.0);
    CHECK(value({"diff", "--expr", "t^2", "--t", "2", "--alpha", "1"}) == 5.0);
    CHECK(value({"diff", "--expr", "3", "--t", "7", "--beta", "0.5"}) == 0.0);
    CHECK(value({"diff", "--expr", "t^2", "--t", "1", "--alpha", "2", "--beta", "1"}) == 3.0);
}

TEST_CASE("check subcommand values")
{
    const auto result = [](std::vector<std::string> args) {
        const auto r = run_in_process(with_json(std::move(args)));
        CHECK(r.code == 0);
        return single_line_json(r.out)["result"];
    };
    // Symmetric sums on [0,3]: ∫1 = 3, ∫t = 4.5, ∫t² = 9.5.
    const json cs = result({"check", "--kind", "cs", "--f", "1", "--g", "t", "--a", "0", "--b", "3",
                            "--alpha", "1", "--beta", "1"});
    CHECK(cs["lhs"] == 4.5);
    CHECK(cs["rhs"].get<double>() == std::sqrt(3.0 * 9.5));
    CHECK(cs["holds"] == true);

    const json mink = result({"check", "--kind", "minkowski", "--f", "t", "--g", "-t", "--a", "0", "--b", "2",
                              "--alpha", "1", "--beta", "1", "--p", "2"});
    CHECK(mink["lhs"] == 0.0);
    CHECK(mink["holds"] == true);

    const json mvt = result({"check", "--kind", "mvt", "--f", "1/t^2", "--g", "1", "--a", "1", "--b", "3",
                             "--alpha", "2", "--beta", "2"});
    CHECK(std::abs(mvt["K"].get<double>() - 5.0 / 9.0) <= 1e-15);
    CHECK(mvt["m"].get<double>() == 1.0 / 9.0);
    CHECK(mvt["M"] == 1.0);

    const json ibp = result({"check", "--kind", "ibp", "--f", "t", "--g", "t", "--a", "0", "--b", "2",
                             "--alpha", "1", "--beta", "1"});
    CHECK(ibp["residual"].get<double>() <= 1e-12);
}

TEST_CASE("text and JSON outputs carry identical numbers")
{
    const std::vector<std::vector<std::string>> commands = {
        inverse_square_example,
        {"eval", "--expr", "1/t^2", "--a", "1", "--b", "3", "--alpha", "2", "--beta", "2", "--mode", "strict",
         "--tol", "1e-6"},
        {"eval", "--expr", "exp(-abs(t))", "--a", "0", "--b", "1", "--alpha", "0.5", "--beta", "0.3"},
        {"check", "--kind", "holder", "--f", "sin(t)", "--g", "2^(-t)", "--a", "0", "--b", "4", "--alpha", "1",
         "--beta", "2", "--p", "3"},
        {"check", "--kind", "mvt", "--f", "cos(t)", "--g", "t^2", "--a", "0", "--b", "3", "--alpha", "1",
         "--beta", "0.5"},
        {"check", "--kind", "comparison", "--f", "sin(t)/(1+t^2)", "--g", "1/(1+t^2)", "--a", "-2", "--b", "2",
         "--alpha", "0.5", "--beta", "1"},
        {"check", "--kind", "ftc", "--f", "2^(-t)", "--a", "0", "--b", "3", "--alpha", "1", "--beta", "1"},
    };
    for (const auto& args : commands) {
        const auto text = run_in_process(args);
        const auto js = run_in_process(with_json(args));
        REQUIRE(text.code == js.code);
        std::vector<std::pair<std::string, json>> fields;
        flatten(single_line_json(js.out)["result"], "", fields);
        std::istringstream lines(text.out);
        std::string line;
        std::size_t index = 0;
        int numbers = 0;
        while (std::getline(lines, line)) {
            const auto colon = line.find(": ");
            REQUIRE(colon != std::string::npos);
            const std::string key = line.substr(0, colon);
            const std::string value = line.substr(colon + 2);
            if (key == "command" || key == "status" || key == "note") continue;
            REQUIRE(index < fields.size());
            CHECK(key == fields[index].first);
            const json& expected = fields[index].second;
            if (expected.is_number()) {
                CHECK(std::stod(value) == expected.get<double>());
                ++numbers;
            }
            ++index;
        }
        CHECK(index == fields.size());
        CHECK(numbers > 0);
    }
}

TEST_CASE("golden reports match end to end")
{
    int cases = 0;
    for (const auto& entry : std::filesystem::directory_iterator(NORLUND_GOLDEN_DIR)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream file(entry.path());
        const json golden = json::parse(file);
        const auto args = golden["args"].get<std::vector<std::string>>();
        CAPTURE(entry.path().filename().string());
        const auto r = run_binary(with_json(args));
        CHECK(r.code == golden["exit_code"].get<int>());
        const json report = single_line_json(r.out);
        CHECK(report == golden["report"]);
        const std::string status = report["status"];
        CHECK(r.code == (status == "ok" ? 0 : status == "check_failed" ? 1 : 2));
        ++cases;
    }
    CHECK(cases >= 20);
}
