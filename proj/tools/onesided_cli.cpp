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

// onesided <completeness|soundness|lemmas|swap-bench> [flags]
//
// Exit codes: 0 success, 1 invalid config, 2 a numerical check failed,
// 3 the report could not be written.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "onesided/harness.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

constexpr const char *kSeedEnv = "ONESIDED_SEED";

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> workers;
    std::string out;
    std::string format = "json";
    bool timing = false;
};

nlohmann::json load_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw onesided::ConfigError("config: cannot read '" + path + "'");
    }
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error &e) {
        throw onesided::ConfigError("config: '" + path + "' is not valid JSON: " +
                                    e.what());
    }
}

std::optional<std::uint64_t> env_seed() {
    const char *raw = std::getenv(kSeedEnv);
    if (raw == nullptr || *raw == '\0') {
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(raw, &used);
        if (used != std::string(raw).size() || std::string(raw)[0] == '-') {
            throw std::invalid_argument(raw);
        }
        return v;
    } catch (const std::exception &) {
        throw onesided::ConfigError(std::string(kSeedEnv) +
                                    ": expected a non-negative integer");
    }
}

onesided::ExperimentConfig build_config(const std::string &experiment,
                                        const Flags &flags) {
    nlohmann::json raw = nlohmann::json::object();
    if (!flags.config.empty()) {
        raw = load_config(flags.config);
        if (!raw.is_object()) {
            throw onesided::ConfigError("config: expected a JSON object");
        }
        if (raw.contains("experiment") && raw["experiment"] != experiment) {
            throw onesided::ConfigError("experiment: config says " +
                                        raw["experiment"].dump() +
                                        " but the subcommand is '" + experiment +
                                        "'");
        }
    }
    raw["experiment"] = experiment;
    // Seed precedence: --seed, then the config file, then the environment.
    if (flags.seed) {
        raw["seed"] = *flags.seed;
    } else if (!raw.contains("seed")) {
        if (const auto s = env_seed()) {
            raw["seed"] = *s;
        }
    }
    if (flags.mode) {
        raw["mode"] = *flags.mode;
    }
    if (flags.trials) {
        raw["trials"] = *flags.trials;
    }
    if (flags.workers) {
        raw["workers"] = *flags.workers;
    }
    return onesided::parse_config(raw);
}

int run(const std::string &experiment, const Flags &flags) {
    onesided::ExperimentReport report;
    onesided::EmitOptions emit;
    try {
        emit.format = onesided::parse_format(flags.format);
        emit.include_timing = flags.timing;
        report = onesided::run_experiment(build_config(experiment, flags));
    } catch (const onesided::ConfigError &e) {
        std::cerr << "error: invalid config: " << e.what() << '\n';
        return kExitConfig;
    }

    const std::string bytes = onesided::emit_report(report, emit);
    try {
        if (flags.out.empty() || flags.out == "-") {
            std::cout << bytes;
            std::cout.flush();
        } else {
            onesided::write_file(flags.out, bytes);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }

    if (!report.passed()) {
        for (const auto &c : report.checks) {
            if (!c.passed) {
                std::cerr << "check failed: " << c.name << " (worst margin "
                          << c.worst_margin << ", tolerance " << c.tolerance
                          << ")\n";
            }
        }
        return kExitValidation;
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulator and experiment runner for a one-sided-error "
                 "quantum verifier."};
    app.set_version_flag("--version", onesided::kVersion);
    app.require_subcommand(1);

    Flags flags;
    const std::pair<const char *, const char *> commands[] = {
        {"completeness", "Honest prover against a toy yes-instance verifier"},
        {"soundness", "Cheating prover against a toy verifier"},
        {"lemmas", "Random-instance checks of the supporting inequalities"},
        {"swap-bench", "SWAP-test circuit against its closed form"},
    };
    for (const auto &[name, help] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "JSON config file")
            ->check(CLI::ExistingFile);
        sub->add_option("--seed", flags.seed,
                        std::string("Root seed (default: config, then $") +
                            kSeedEnv + ", then 0)");
        sub->add_option("--mode", flags.mode, "exact or sampled")
            ->check(CLI::IsMember({"exact", "sampled"}));
        sub->add_option("--trials", flags.trials, "Sampled runs or benchmark pairs");
        sub->add_option("--workers", flags.workers,
                        "Threads for sampled trials (results do not depend on it)");
        sub->add_option("--out", flags.out, "Report path (default: stdout)");
        sub->add_option("--format", flags.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--timing", flags.timing,
                      "Include wall_time_ms in the report");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    for (const auto &[name, help] : commands) {
        (void)help;
        if (app.got_subcommand(name)) {
            return run(name, flags);
        }
    }
    return kExitConfig;
}
