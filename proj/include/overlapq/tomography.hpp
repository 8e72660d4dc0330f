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

// Finite-shot Pauli tomography: forward simulation, linear inversion and
// diluted R-rho-R maximum likelihood.
//
// Outcome bit 0 is the +1 eigenvector of the measured axis, so for Z it is
// |down> (H) and for X it is (|down> + |up>)/sqrt(2). Bit strings are
// written detector 0 first.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "overlapq/density_matrix.hpp"

namespace overlapq {

enum class PauliAxis : std::uint8_t { kX, kY, kZ };

struct MeasurementSetting {
    std::vector<PauliAxis> bases;

    std::string to_string() const;
    /// Accepts strings such as "XYZ"; throws Error(kParse) otherwise.
    static MeasurementSetting parse(std::string_view text);

    friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;
    friend auto operator<=>(const MeasurementSetting&, const MeasurementSetting&) = default;
};

/// All 3^N settings, first qubit slowest, X < Y < Z.
std::vector<MeasurementSetting> all_pauli_settings(int num_qubits);

struct CountsRow {
    MeasurementSetting setting;
    /// Bit (N-1-q) is the outcome on qubit q.
    std::uint32_t outcome = 0;
    std::uint64_t count = 0;
};

struct CountsTable {
    int num_qubits = 0;
    std::uint64_t shots_per_setting = 0;
    std::optional<std::uint64_t> seed;
    std::vector<CountsRow> rows;

    /// Throws Error(kInvalidInput) when a setting has the wrong length, an
    /// outcome is out of range, or a setting's counts do not sum to
    /// shots_per_setting.
    void validate() const;
};

/// Born-rule probabilities tr(rho Pi_outcome) for one setting, indexed by
/// outcome.
std::vector<double> outcome_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting);

/// Multinomial sampling per setting. Setting k draws from its own stream
/// seeded by (seed, k), so results depend only on the seed and the setting
/// order.
CountsTable simulate_counts(const DensityMatrix& rho, std::span<const MeasurementSetting> settings,
                            std::uint64_t shots, std::uint64_t seed);

/// rho = 2^-N sum_P <P> P over Pauli strings; Hermitian and trace one, not
/// necessarily PSD. Throws Error(kIncompleteSettings) if some Pauli string
/// has no compatible setting.
CMatrix reconstruct_linear(const CountsTable& counts);

struct MleOptions {
    int max_iters = 20000;
    /// Stop when an accepted step gains less log-likelihood than this.
    double tol = 1e-12;
    /// Initial dilution epsilon of rho -> (1 + eps R) rho (1 + eps R).
    double dilution = 0.5;
};

struct MleResult {
    DensityMatrix rho;
    int iterations = 0;
    bool converged = false;
    /// Log-likelihood per accepted iterate, starting from the maximally mixed
    /// state. Nondecreasing.
    std::vector<double> log_likelihood;
};

/// Iterative maximum likelihood. A step that would lower the likelihood is
/// retried with half the dilution; accepted steps grow it again.
MleResult reconstruct_mle(const CountsTable& counts, const MleOptions& options = {});

/// Delimited text: '#' header lines with qubits, shots, seed and row count, a
/// column header "setting,outcome,count", then one row per (setting, outcome).
/// The row count line is optional on input; when present it is checked.
void write_counts(std::ostream& out, const CountsTable& counts);

/// Throws Error(kParse) with the offending line number.
CountsTable read_counts(std::istream& in);

}  // namespace overlapq
