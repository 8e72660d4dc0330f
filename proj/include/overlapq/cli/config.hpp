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

// Experiment configuration files (JSON).
//
//   {
//     "preset": "ghz" | "w" | "custom",
//     "ghz": {"alpha1": c, "alpha2": c, "beta2": c, "beta3": c, "gamma1": c, "gamma3": c},
//     "w": {"tritter": "balanced" | "dft"} or {"rows": [[c, c, c], [..], [..]]},
//     "custom": {"T": [[c, ..], ..], "S": [["down" | "up" | "unused", ..], ..]},
//     "distinguishability": {"gram": [[c, ..], ..]}
//                        or {"delays": [x, ..], "coherence_length": x}
//                        or {"uniform_overlap": g},
//     "case": "II",
//     "witness_margin": 0.0,
//     "tomography": {"shots": n, "seed": n, "settings": ["XYZ", ..], "max_iters": n, "tol": x},
//     "output": {"matrix_file": "rho.txt", "report_file": "report.json", "counts_file": "counts.csv",
//                "mle_matrix_file": "rho_mle.txt"}
//   }
//
// A complex value c is a number, a [re, im] pair or {"re": x, "im": y}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "overlapq/error.hpp"
#include "overlapq/reduce.hpp"
#include "overlapq/tomography.hpp"
#include "overlapq/transform.hpp"

namespace overlapq::cli {

/// Validation failure tied to a config field.
class ConfigError : public Error {
public:
    ConfigError(ErrorCode code, std::string field, const std::string& message)
        : Error(code, message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class Preset { kGhz, kW, kCustom };

struct Distinguishability {
    std::optional<CMatrix> gram;
    std::optional<DelayModel> delays;
    std::optional<double> uniform_overlap;
};

struct TomographyConfig {
    std::uint64_t shots = 100000;
    std::uint64_t seed = 1;
    /// Empty means all 3^N Pauli settings.
    std::vector<MeasurementSetting> settings;
    MleOptions mle;
};

struct OutputConfig {
    std::string matrix_file = "rho.txt";
    std::string report_file = "report.json";
    std::string counts_file = "counts.csv";
    std::string mle_matrix_file = "rho_mle.txt";
};

struct ExperimentConfig {
    Preset preset = Preset::kGhz;
    GhzParams ghz = GhzParams::balanced();
    AmplitudeRows w_rows = balanced_tritter_rows();
    CMatrix custom_t;
    std::vector<std::vector<SpinSlot>> custom_s;
    Distinguishability distinguishability;
    std::string case_label;
    double witness_margin = 0.0;
    std::optional<TomographyConfig> tomography;
    OutputConfig output;
};

/// Parses and re-validates every module invariant (row norms, Gram PSD,
/// delay model). Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Reads a file and parses it; JSON syntax errors become ConfigError(kParse).
ExperimentConfig load_config(const std::string& path);

TransformSpec build_spec(const ExperimentConfig& cfg);
GramMatrix build_gram(const ExperimentConfig& cfg);

/// Normalized form of every field that affects results (outputs excluded).
/// Numbers are written as doubles so formatting differences do not matter.
nlohmann::json canonical_json(const ExperimentConfig& cfg);

/// Hex SHA-256 of canonical_json(cfg).dump().
std::string config_hash(const ExperimentConfig& cfg);

std::string sha256_hex(const std::string& bytes);

std::string_view preset_name(Preset p);

}  // namespace overlapq::cli
