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

/**
 * @file
 * Batch experiment runner behind the `onesided` CLI. The config and report
 * formats are documented in docs/report-schema.md.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "onesided/protocol.hpp"

namespace onesided {

inline constexpr const char *kVersion = "0.1.0";

/// Invalid configuration; `what()` names the offending field.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class Experiment { Completeness, Soundness, Lemmas, SwapBench };
enum class Mode { Exact, Sampled };
enum class ReportFormat { Json, Csv };

[[nodiscard]] const char *experiment_name(Experiment e);
[[nodiscard]] const char *mode_name(Mode m);
[[nodiscard]] Experiment parse_experiment(const std::string &s);
[[nodiscard]] Mode parse_mode(const std::string &s);
[[nodiscard]] ReportFormat parse_format(const std::string &s);

struct VerifierConfig {
    double p = 0.75;
    std::size_t p_qubits = 1;
    std::size_t a_qubits = 1;
};

using Amplitudes = std::vector<std::complex<double>>;

struct StrategyConfig {
    StrategyKind kind = StrategyKind::Honest;
    double q = 0.5;                        // choi_product
    std::uint64_t seed = 0;                // local_unitaries
    std::optional<Amplitudes> witness;     // state sent in P
    std::optional<Amplitudes> amplitudes;  // custom, over (P, S1, S1', ...)
};

struct Tolerances {
    double completeness = 1e-9;  // |1 - accept| for honest proofs
    double branch_sum = 1e-9;    // |sum of branch masses - 1|
    double margin = 1e-9;        // inequality margins must be >= -margin
    double identity = 1e-12;     // closed-form identities (SWAP, Choi, post-selection)
    double rewinding = 1e-8;
    double closed_form = 1e-9;   // b = 1 reject mass vs the SWAP formula
    double sigma = 5.0;          // sampled vs exact, in binomial standard deviations
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Completeness;
    VerifierConfig verifier;
    std::size_t l = 2;
    StrategyConfig strategy;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    Mode mode = Mode::Exact;
    std::size_t instances = 1000;  // lemmas: random instances per check
    std::size_t workers = 1;       // sampled mode; does not affect results
    Tolerances tolerances;
};

/// Parses and validates a config object. Unknown keys are rejected.
/// Throws ConfigError.
[[nodiscard]] ExperimentConfig parse_config(const nlohmann::json &j);
/// Throws ConfigError on semantic violations (l < 2, p outside (0, 1], ...).
void validate_config(const ExperimentConfig &c);
/// Canonical JSON form; parse_config(config_to_json(c)) reproduces c.
[[nodiscard]] nlohmann::ordered_json config_to_json(const ExperimentConfig &c);

[[nodiscard]] ProverStrategy build_strategy(const ExperimentConfig &c);

struct CheckResult {
    std::string name;
    std::size_t count = 0;
    double worst_margin = 0.0;
    double tolerance = 0.0;
    bool passed = true;
};

/// Folds margins into a check that passes when every margin >= -tolerance.
class CheckAccumulator {
  public:
    CheckAccumulator(std::string name, double tolerance);
    void add(double margin);
    [[nodiscard]] CheckResult result() const;

  private:
    CheckResult r_;
};

struct TrialRow {
    std::size_t trial = 0;
    int b = 0;
    std::size_t pair_i = 0;  // 1-based
    std::size_t pair_j = 0;
    std::string postsel;     // Bell outcome for b = 0, "-" otherwise
    bool accept = false;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::optional<double> accept_probability;
    std::optional<double> reject_probability;
    std::optional<BranchBreakdown> breakdown;
    std::optional<double> exact_accept_probability;  // sampled mode reference
    std::vector<CheckResult> checks;
    std::vector<TrialRow> rows;
    double wall_time_ms = 0.0;
    std::string version = kVersion;

    [[nodiscard]] bool passed() const;
};

/// Deterministic in (config, seed). Throws ConfigError before doing any
/// work if the config is invalid.
[[nodiscard]] ExperimentReport run_experiment(const ExperimentConfig &config);

/// Random-instance checks of the trace-distance and fidelity inequalities,
/// plus the closed-form identities of the protocol building blocks.
[[nodiscard]] std::vector<CheckResult>
lemma_suite(std::size_t instances, std::uint64_t seed, const Tolerances &tol);

struct EmitOptions {
    ReportFormat format = ReportFormat::Json;
    bool include_timing = false;
};

/// Serialized report. wall_time_ms is left out unless include_timing is
/// set, so that identical runs produce identical bytes.
[[nodiscard]] std::string emit_report(const ExperimentReport &report,
                                      const EmitOptions &options = {});

/// Writes `bytes` to `path`; throws std::runtime_error naming the path.
void write_file(const std::string &path, const std::string &bytes);

}  // namespace onesided
