// Copyright 2026 The overlapq Authors
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

#pragma once

// transform -> postselect -> trace -> classify -> optional tomography round
// trip. Every number in a report comes from these library calls.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "overlapq/cli/config.hpp"
#include "overlapq/entanglement.hpp"
#include "overlapq/reduce.hpp"
#include "overlapq/tomography.hpp"

namespace overlapq::cli {

inline constexpr const char* kToolName = "overlapq";
inline constexpr const char* kToolVersion = "0.1.0";

struct TomographyOutcome {
    CountsTable counts;
    MleResult mle;
    std::optional<ClassificationReport> classification;
    double fidelity_to_source = 0.0;
};

struct RunResult {
    TracedState traced;
    std::optional<ClassificationReport> classification;  // three particles only
    std::optional<TomographyOutcome> tomography;
};

/// Spin of each particle before the transformation: the spin of its first
/// reachable detector.
std::vector<Spin> initial_spins(const TransformSpec& spec);

RunResult run_experiment(const ExperimentConfig& cfg);

/// Copy of cfg with one scannable parameter set:
///   "g"                      uniform pairwise overlap
///   "L1".."LN"               one delay of the delay model (1-based)
///   "alpha1" .. "gamma3"     a GHZ amplitude; its row partner is rescaled to
///                            keep the row normalized (phase kept)
/// Throws ConfigError for unknown or inapplicable parameters.
ExperimentConfig with_parameter(const ExperimentConfig& cfg, const std::string& name, double value);

struct ScanRow {
    double value;
    double p_success;
    std::optional<ClassificationReport> classification;
};

/// steps evenly spaced points from..to inclusive (steps == 1 gives just
/// from). Throws ConfigError when steps < 1.
std::vector<ScanRow> run_scan(const ExperimentConfig& cfg, const std::string& name, double from, double to,
                              int steps);

struct ReconstructionResult {
    CountsTable counts;
    MleResult mle;
    double fidelity_ghz;
    std::optional<ClassificationReport> classification;
};

ReconstructionResult reconstruct_counts(const CountsTable& counts, const MleOptions& options);

// Density-matrix files: '#' header documenting dimension and basis order,
// then a "# real" table and a "# imag" table, comma separated, %.17g.
std::string format_density_matrix(const CMatrix& m, int num_qubits);
CMatrix parse_density_matrix(std::istream& in);

nlohmann::json classification_json(const ClassificationReport& c);

/// Run report. matrix_sha256 is the hash of the persisted matrix file.
nlohmann::json run_report_json(const ExperimentConfig& cfg, const RunResult& result,
                               const std::string& matrix_file, const std::string& matrix_sha256);

nlohmann::json reconstruct_report_json(const ReconstructionResult& result, const std::string& counts_file,
                                       const std::string& matrix_file, const std::string& matrix_sha256);

/// Flat "key,value" rendering of a report object (nested keys joined by '.').
std::string report_csv(const nlohmann::json& report);

std::string scan_csv(const std::string& name, const std::vector<ScanRow>& rows);
nlohmann::json scan_json(const std::string& name, const std::vector<ScanRow>& rows);

}  // namespace overlapq::cli
