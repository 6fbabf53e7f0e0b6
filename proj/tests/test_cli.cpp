#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/sampling.hpp"

using namespace hardysim;
using namespace hardysim::cli;
using nlohmann::json;

namespace {

struct CommandOutput {
    int exit_code = 0;
    std::string out;
    std::string err;
};

template <typename Fn>
CommandOutput capture(Fn&& fn) {
    std::ostringstream out, err;
    CommandOutput result;
    result.exit_code = fn(out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("hardysim_test_" + name);
}

#ifdef HARDYSIM_CLI_PATH
std::string run_binary(const std::string& args, int& exit_code,
                       const std::string& stdout_file) {
    const std::string cmd =
        std::string(HARDYSIM_CLI_PATH) + " " + args + " > " + stdout_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    exit_code = WEXITSTATUS(status);
    std::ifstream f(stdout_file, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}
#endif

}  // namespace

TEST_CASE("cmd_hardy default run certifies the contradiction") {
    RunConfig config;
    const CommandOutput r =
        capture([&](auto& out, auto& err) { return cmd_hardy(config, out, err); });
    CHECK(r.exit_code == kExitSuccess);
    const json doc = json::parse(r.out);
    CHECK(doc["document"] == "hardy");
    CHECK(doc["verdict"] == true);
    CHECK(std::abs(doc["witness"]["p4"].get<double>() - 0.011277940269717726) < 1e-6);
    CHECK(doc["params"]["alpha"] == 3.0);
    CHECK(doc["version"] == "1.0.0");
}

TEST_CASE("cmd_hardy exit codes") {
    RunConfig relaxed;
    relaxed.params.tol = 1.0;
    CHECK(capture([&](auto& out, auto& err) { return cmd_hardy(relaxed, out, err); }).exit_code ==
          kExitVerdictFalse);

    RunConfig bad;
    bad.params.alpha_mag = 1.5;
    bad.out_path = temp_file("never_written.json").string();
    std::filesystem::remove(bad.out_path);
    const CommandOutput r =
        capture([&](auto& out, auto& err) { return cmd_hardy(bad, out, err); });
    CHECK(r.exit_code == kExitConfigError);
    CHECK_FALSE(r.err.empty());
    CHECK_FALSE(std::filesystem::exists(bad.out_path));
}

TEST_CASE("cmd_experiment validates the experiment number") {
    RunConfig config;
    CHECK(capture([&](auto& out, auto& err) { return cmd_experiment(config, 5, out, err); })
              .exit_code == kExitConfigError);
}

TEST_CASE("experiment 1 table shows no joint detection") {
    RunConfig config;
    const CommandOutput r =
        capture([&](auto& out, auto& err) { return cmd_experiment(config, 1, out, err); });
    CHECK(r.exit_code == kExitSuccess);
    const json doc = json::parse(r.out);
    CHECK(doc["table"]["modes"] == json::array({"u1", "u2"}));
    for (const auto& entry : doc["table"]["entries"]) {
        const auto& counts = entry["counts"];
        CHECK_FALSE((counts[0].get<int>() >= 1 && counts[1].get<int>() >= 1));
    }
}

TEST_CASE("experiment 4 CSV layout and JSON agreement") {
    RunConfig config;
    config.params.mode = SimMode::ideal;
    const CommandOutput csv =
        capture([&](auto& out, auto& err) { return cmd_experiment(config, 4, out, err); });
    // Switch format for the same computation.
    RunConfig csv_config = config;
    csv_config.format = "csv";
    const CommandOutput csv_run =
        capture([&](auto& out, auto& err) { return cmd_experiment(csv_config, 4, out, err); });
    CHECK(csv_run.exit_code == kExitSuccess);

    std::istringstream lines(csv_run.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "c1,d1,c2,d2,probability");

    // Rows sorted lexicographically, probabilities identical to the JSON ones.
    const json doc = json::parse(csv.out);
    const auto& entries = doc["table"]["entries"];
    std::size_t row_idx = 0;
    std::vector<int> previous;
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<int> counts;
        double prob = 0.0;
        std::istringstream fields(line);
        std::string field;
        for (int i = 0; i < 4; ++i) {
            std::getline(fields, field, ',');
            counts.push_back(std::stoi(field));
        }
        std::getline(fields, field, ',');
        prob = std::stod(field);
        if (!previous.empty()) CHECK(previous < counts);
        previous = counts;
        REQUIRE(row_idx < entries.size());
        CHECK(entries[row_idx]["counts"].get<std::vector<int>>() == counts);
        CHECK(entries[row_idx]["probability"].get<double>() == prob);  // bit-exact
        ++row_idx;
    }
    CHECK(row_idx == entries.size());
}

TEST_CASE("cmd_sweep validation and summary") {
    RunConfig config;
    config.params.mode = SimMode::ideal;
    CHECK(capture([&](auto& out, auto& err) { return cmd_sweep(config, "phi", out, err); })
              .exit_code == kExitConfigError);
    CHECK(capture([&](auto& out, auto& err) { return cmd_sweep(config, "voltage", out, err); })
              .exit_code == kExitConfigError);

    config.values = {0.0, 2.0, 4.1};
    const CommandOutput r =
        capture([&](auto& out, auto& err) { return cmd_sweep(config, "phi", out, err); });
    CHECK(r.exit_code == kExitSuccess);
    const json doc = json::parse(r.out);
    CHECK(doc["document"] == "sweep");
    CHECK(doc["points"].size() == 3);
    CHECK(doc["summary"]["max_tv_exp4_vs_first"].get<double>() <= 1e-10);
    CHECK(doc["summary"]["max_abs_deviation_vs_first"].get<double>() <= 1e-10);
}

TEST_CASE("cutoff sweep values must be whole deltas") {
    RunConfig config;
    config.params.mode = SimMode::ideal;
    config.values = {0.5};
    CHECK(capture([&](auto& out, auto& err) { return cmd_sweep(config, "cutoff", out, err); })
              .exit_code == kExitConfigError);
    config.values = {0.0, 5.0};
    const CommandOutput r =
        capture([&](auto& out, auto& err) { return cmd_sweep(config, "cutoff", out, err); });
    CHECK(r.exit_code == kExitSuccess);
    const json doc = json::parse(r.out);
    CHECK(doc["summary"]["max_abs_deviation_vs_first"].get<double>() <= 1e-8);
}

TEST_CASE("sweep writes point files plus a summary") {
    RunConfig config;
    config.params.mode = SimMode::ideal;
    config.values = {0.0, 1.0};
    config.out_path = temp_file("sweep.json").string();
    const CommandOutput r =
        capture([&](auto& out, auto& err) { return cmd_sweep(config, "phi", out, err); });
    CHECK(r.exit_code == kExitSuccess);
    CHECK(std::filesystem::exists(config.out_path));
    CHECK(std::filesystem::exists(temp_file("sweep.0.json")));
    CHECK(std::filesystem::exists(temp_file("sweep.1.json")));
    std::ifstream point(temp_file("sweep.0.json"));
    const json doc = json::parse(point);
    point.close();
    CHECK(doc["document"] == "hardy");
    for (const char* name : {"sweep.json", "sweep.0.json", "sweep.1.json"})
        std::filesystem::remove(temp_file(name));
}

TEST_CASE("cmd_sample requires shots and a seed") {
    RunConfig config;
    config.params.mode = SimMode::ideal;
    CHECK(capture([&](auto& out, auto& err) { return cmd_sample(config, 4, out, err); })
              .exit_code == kExitConfigError);
    config.shots = 10;
    CHECK(capture([&](auto& out, auto& err) { return cmd_sample(config, 4, out, err); })
              .exit_code == kExitConfigError);
    config.seed_set = true;

    config.shots = 1;
    const CommandOutput single =
        capture([&](auto& out, auto& err) { return cmd_sample(config, 4, out, err); });
    CHECK(single.exit_code == kExitSuccess);
    CHECK(json::parse(single.out)["outcomes"].size() == 1);
}

TEST_CASE("sampling is reproducible and statistically sane") {
    RunConfig config;
    config.params.mode = SimMode::ideal;
    config.shots = 100000;
    config.seed = 7;
    config.seed_set = true;
    const CommandOutput a =
        capture([&](auto& out, auto& err) { return cmd_sample(config, 4, out, err); });
    const CommandOutput b =
        capture([&](auto& out, auto& err) { return cmd_sample(config, 4, out, err); });
    CHECK(a.exit_code == kExitSuccess);
    CHECK(a.out == b.out);

    const double p = 0.011277940269717726;
    const double sigma = std::sqrt(p * (1.0 - p) / config.shots);
    double freq = 0.0;
    const json doc = json::parse(a.out);
    for (const auto& row : doc["outcomes"]) {
        if (row["counts"] == json::array({0, 1, 0, 1})) {
            freq = row["frequency"].get<double>();
            CHECK(row["wilson_low"].get<double>() < p);
            CHECK(row["wilson_high"].get<double>() > p);
        }
    }
    CHECK(std::abs(freq - p) < 5.0 * sigma);
}

#ifdef HARDYSIM_CLI_PATH

TEST_CASE("binary reruns are byte-identical") {
    const std::string f1 = temp_file("rerun1.json").string();
    const std::string f2 = temp_file("rerun2.json").string();
    int code1 = 0, code2 = 0;
    const std::string out1 = run_binary("hardy --phi 0.3", code1, f1);
    const std::string out2 = run_binary("hardy --phi 0.3", code2, f2);
    CHECK(code1 == 0);
    CHECK(code2 == 0);
    CHECK_FALSE(out1.empty());
    CHECK(out1 == out2);
    std::filesystem::remove(f1);
    std::filesystem::remove(f2);
}

TEST_CASE("binary exit codes match the contract") {
    const std::string scratch = temp_file("exit.json").string();
    int code = 0;
    run_binary("hardy", code, scratch);
    CHECK(code == 0);
    run_binary("hardy --tol 1", code, scratch);
    CHECK(code == 1);
    run_binary("hardy --alpha 1.5 --mode full", code, scratch);
    CHECK(code == 2);
    run_binary("experiment 5", code, scratch);
    CHECK(code == 2);
    run_binary("sample 4 --shots 3", code, scratch);  // missing seed
    CHECK(code == 2);
    std::filesystem::remove(scratch);
}

TEST_CASE("rerunning with the echoed params reproduces the document") {
    const std::string f1 = temp_file("echo1.json").string();
    const std::string f2 = temp_file("echo2.json").string();
    int code = 0;
    const std::string out1 = run_binary("experiment 4 --mode ideal --phi 0.21", code, f1);
    REQUIRE(code == 0);
    const json doc = json::parse(out1);
    std::ostringstream args;
    args.precision(17);
    args << "experiment 4 --mode " << doc["params"]["mode"].get<std::string>() << " --phi "
         << doc["params"]["phi"].get<double>() << " --alpha "
         << doc["params"]["alpha"].get<double>();
    const std::string out2 = run_binary(args.str(), code, f2);
    CHECK(out1 == out2);
    std::filesystem::remove(f1);
    std::filesystem::remove(f2);
}

#endif  // HARDYSIM_CLI_PATH
