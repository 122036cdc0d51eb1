// Copyright 2026 The onesided Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "onesided/harness.hpp"

namespace onesided {
namespace {

using nlohmann::json;

ExperimentConfig parse(const char *text) { return parse_config(json::parse(text)); }

std::string config_error(const char *text) {
    try {
        validate_config(parse(text));
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

TEST(Config, Defaults) {
    const ExperimentConfig c = parse(R"({"experiment": "completeness"})");
    EXPECT_EQ(c.experiment, Experiment::Completeness);
    EXPECT_EQ(c.l, 2u);
    EXPECT_EQ(c.mode, Mode::Exact);
    EXPECT_EQ(c.strategy.kind, StrategyKind::Honest);
    const ExperimentConfig s = parse(R"({"experiment": "soundness"})");
    EXPECT_DOUBLE_EQ(s.verifier.p, 1e-3);
    EXPECT_EQ(s.strategy.kind, StrategyKind::IdleEPR);
}

TEST(Config, FieldPathErrors) {
    EXPECT_NE(config_error(R"({"experiment": "completeness", "bogus": 1})").find("bogus"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"experiment": "soundness", "verifier": {"p": "x"}})")
                  .find("verifier.p"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"experiment": "soundness", "strategy": {"kind": "nope"}})")
                  .find("strategy.kind"),
              std::string::npos);
    EXPECT_NE(config_error(R"({"experiment": "soundness", "tolerances": {"sigma": -1}})")
                  .find("tolerances"),
              std::string::npos);
    EXPECT_FALSE(config_error(R"({})").empty());
}

TEST(Config, RangeValidation) {
    EXPECT_FALSE(config_error(R"({"experiment": "soundness", "verifier": {"p": 0}})").empty());
    EXPECT_FALSE(config_error(R"({"experiment": "soundness", "l": 1})").empty());
    EXPECT_FALSE(config_error(R"({"experiment": "soundness", "l": 5})").empty());
    EXPECT_FALSE(
        config_error(R"({"experiment": "soundness", "mode": "sampled", "trials": 0})").empty());
    EXPECT_FALSE(config_error(R"({"experiment": "completeness", "verifier": {"p": 0.4}})")
                     .empty());
    EXPECT_FALSE(config_error(
                     R"({"experiment": "completeness", "strategy": {"kind": "idle_epr"}})")
                     .empty());
    EXPECT_FALSE(config_error(R"({"experiment": "lemmas", "mode": "sampled"})").empty());
    EXPECT_FALSE(config_error(R"({"experiment": "soundness",
        "strategy": {"kind": "choi_product", "q": 1.5}})")
                     .empty());
    EXPECT_FALSE(config_error(R"({"experiment": "soundness",
        "strategy": {"kind": "idle_epr", "witness": [1, 0, 0]}})")
                     .empty());
    EXPECT_FALSE(config_error(R"({"experiment": "soundness",
        "strategy": {"kind": "custom", "amplitudes": [1, 0]}})")
                     .empty());
    EXPECT_FALSE(config_error(R"({"experiment": "soundness", "workers": 0})").empty());
    EXPECT_TRUE(config_error(R"({"experiment": "soundness",
        "strategy": {"kind": "local_unitaries", "seed": 3, "witness": [[0, 1], 0]}})")
                    .empty());
}

TEST(Config, RoundTrip) {
    const ExperimentConfig c = parse(R"({"experiment": "soundness", "l": 3,
        "verifier": {"p": 0.25, "p_qubits": 2, "a_qubits": 1},
        "strategy": {"kind": "choi_product", "q": 0.7, "witness": [1, [0, 1], 0, 0]},
        "trials": 77, "seed": 9, "mode": "sampled", "workers": 3,
        "tolerances": {"sigma": 4}})");
    const ExperimentConfig back = parse_config(json::parse(config_to_json(c).dump()));
    EXPECT_EQ(config_to_json(back).dump(), config_to_json(c).dump());
    EXPECT_EQ(back.workers, 3u);
    EXPECT_DOUBLE_EQ(back.tolerances.sigma, 4.0);
    ASSERT_TRUE(back.strategy.witness.has_value());
    EXPECT_EQ((*back.strategy.witness)[1], std::complex<double>(0, 1));
}

TEST(Config, CustomStateBreakingMarginalIsConfigError) {
    // |0...0> over (P, S1, S1', S2, S2') leaves S1', S2' pure.
    std::string amps = "[1";
    for (int k = 1; k < 32; ++k) {
        amps += ",0";
    }
    amps += "]";
    const std::string text = R"({"experiment": "soundness",
        "strategy": {"kind": "custom", "amplitudes": )" + amps + "}}";
    const ExperimentConfig c = parse_config(json::parse(text));
    EXPECT_NO_THROW(validate_config(c));
    EXPECT_THROW((void)run_experiment(c), ConfigError);
}

TEST(Config, ShippedExamplesValidate) {
    for (const char *name : {"completeness", "soundness", "lemmas", "swap-bench"}) {
        std::ifstream f(std::string(ONESIDED_CONFIG_DIR) + "/" + name + ".json");
        ASSERT_TRUE(f) << name;
        const ExperimentConfig c = parse_config(json::parse(f));
        EXPECT_NO_THROW(validate_config(c)) << name;
        EXPECT_STREQ(experiment_name(c.experiment), name);
    }
}

TEST(Checks, Accumulator) {
    CheckAccumulator a("x", 1e-9);
    a.add(0.5);
    a.add(-5e-10);
    EXPECT_TRUE(a.result().passed);
    EXPECT_DOUBLE_EQ(a.result().worst_margin, -5e-10);
    a.add(-2e-9);
    EXPECT_FALSE(a.result().passed);
    EXPECT_EQ(a.result().count, 3u);
    CheckAccumulator n("nan", 1.0);
    n.add(std::nan(""));
    n.add(1.0);
    EXPECT_FALSE(n.result().passed);
}

TEST(Experiments, CompletenessPasses) {
    ExperimentConfig c = parse(R"({"experiment": "completeness", "verifier": {"p": 0.6}, "l": 3})");
    const ExperimentReport r = run_experiment(c);
    EXPECT_TRUE(r.passed());
    ASSERT_TRUE(r.accept_probability.has_value());
    EXPECT_NEAR(*r.accept_probability, 1.0, 1e-9);
}

TEST(Experiments, SoundnessReportsPositiveReject) {
    const ExperimentReport r = run_experiment(parse(R"({"experiment": "soundness"})"));
    EXPECT_TRUE(r.passed());
    EXPECT_GT(*r.reject_probability, 0.0);
    bool found = false;
    for (const auto &c : r.checks) {
        found |= c.name == "swap_branch_closed_form";
    }
    EXPECT_TRUE(found);
}

TEST(Experiments, SampledIsDeterministicAndWorkerIndependent) {
    ExperimentConfig c = parse(R"({"experiment": "soundness", "mode": "sampled",
        "trials": 3000, "seed": 42, "strategy": {"kind": "local_unitaries", "seed": 7}})");
    const std::string one = emit_report(run_experiment(c));
    const std::string again = emit_report(run_experiment(c));
    EXPECT_EQ(one, again);
    c.workers = 4;
    EXPECT_EQ(emit_report(run_experiment(c)), one);
    c.workers = 1;
    EXPECT_EQ(emit_report(run_experiment(c), {ReportFormat::Csv, false}),
              emit_report(run_experiment(c), {ReportFormat::Csv, false}));
    c.seed = 43;
    EXPECT_NE(emit_report(run_experiment(c)), one);
}

TEST(Experiments, SampledCsvSchema) {
    const ExperimentConfig c = parse(R"({"experiment": "soundness", "mode": "sampled",
        "trials": 50, "seed": 1, "l": 3})");
    std::istringstream csv(emit_report(run_experiment(c), {ReportFormat::Csv, false}));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "trial,b,pair_i,pair_j,postsel,verdict");
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        ASSERT_EQ(cells.size(), 6u) << line;
        EXPECT_EQ(cells[0], std::to_string(rows));
        EXPECT_TRUE(cells[1] == "0" || cells[1] == "1");
        const int i = std::stoi(cells[2]), j = std::stoi(cells[3]);
        EXPECT_GE(i, 1);
        EXPECT_LE(i, 3);
        EXPECT_NE(i, j);
        EXPECT_EQ(cells[1] == "1", cells[4] == "-");
        EXPECT_TRUE(cells[5] == "accept" || cells[5] == "reject");
        ++rows;
    }
    EXPECT_EQ(rows, 50u);
}

TEST(Experiments, JsonOmitsTimingUnlessAsked) {
    const ExperimentReport r = run_experiment(parse(R"({"experiment": "swap-bench", "trials": 20})"));
    EXPECT_TRUE(r.passed());
    const json plain = json::parse(emit_report(r));
    EXPECT_FALSE(plain.contains("wall_time_ms"));
    EXPECT_EQ(plain["version"], kVersion);
    const json timed = json::parse(emit_report(r, {ReportFormat::Json, true}));
    EXPECT_TRUE(timed.contains("wall_time_ms"));
}

TEST(Experiments, LemmaSuiteSmall) {
    const std::vector<CheckResult> checks = lemma_suite(40, 5, Tolerances{});
    EXPECT_GE(checks.size(), 15u);
    for (const auto &c : checks) {
        EXPECT_TRUE(c.passed) << c.name << " worst " << c.worst_margin;
        EXPECT_GT(c.count, 0u) << c.name;
    }
}

TEST(Io, WriteFileNamesPath) {
    try {
        write_file("/nonexistent-dir/x/report.json", "{}");
        FAIL() << "expected an error";
    } catch (const std::runtime_error &e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x/report.json"),
                  std::string::npos);
    }
}

// ---------------------------------------------------------------------------
// CLI exit codes

int run_cli(const std::string &args) {
    const std::string cmd = std::string(ONESIDED_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / ("onesided_test_" + name)).string();
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("completeness"), 0);
    EXPECT_EQ(run_cli("soundness --format csv"), 0);
    EXPECT_EQ(run_cli("soundness --mode sampled --trials 0"), 1);
    EXPECT_EQ(run_cli("soundness --config /nonexistent.json"), 1);
    EXPECT_EQ(run_cli("completeness --out /nonexistent-dir/x/out.json"), 3);

    const std::string cfg = temp_path("mismatch.json");
    std::ofstream(cfg) << R"({"experiment": "lemmas"})";
    EXPECT_EQ(run_cli("soundness --config " + cfg), 1);

    // A zero tolerance on the sampled check with a tiny sample fails it.
    const std::string strict = temp_path("strict.json");
    std::ofstream(strict) << R"({"experiment": "soundness", "mode": "sampled",
        "trials": 10, "tolerances": {"sigma": 0, "branch_sum": 0}})";
    EXPECT_EQ(run_cli("soundness --config " + strict), 2);
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
    const std::string a = temp_path("a.json"), b = temp_path("b.json");
    ASSERT_EQ(run_cli("soundness --mode sampled --trials 500 --seed 3 --workers 2 --out " + a),
              0);
    ASSERT_EQ(run_cli("soundness --mode sampled --trials 500 --seed 3 --out " + b), 0);
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    EXPECT_FALSE(sa.str().empty());
    EXPECT_EQ(sa.str(), sb.str());
}

TEST(Cli, SeedFromEnvironment) {
    const std::string a = temp_path("env_a.json"), b = temp_path("env_b.json");
    ASSERT_EQ(run_cli("soundness --mode sampled --trials 200 --seed 11 --out " + a), 0);
    ASSERT_EQ(std::system((std::string("ONESIDED_SEED=11 ") + ONESIDED_CLI +
                           " soundness --mode sampled --trials 200 --out " + b +
                           " >/dev/null 2>&1")
                              .c_str()),
              0);
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    EXPECT_EQ(sa.str(), sb.str());
}

}  // namespace
}  // namespace onesided
