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

// Fidelities, GHZ/W genuine-entanglement witnesses and the W phase search.
//
// The classification is a witness statement only. A failed witness does not
// certify separability.

#include <string_view>

#include "overlapq/density_matrix.hpp"
#include "overlapq/types.hpp"

namespace overlapq {

inline constexpr double kGhzWitnessBound = 0.5;
inline constexpr double kWWitnessBound = 2.0 / 3.0;

/// Round-off allowance on the strict witness comparisons, so that states
/// sitting exactly on a bound (up to floating error) do not pass.
inline constexpr double kWitnessRoundoff = 1e-9;

/// Grid resolution per phase axis of the W phase search.
inline constexpr int kPhaseGridSize = 256;
/// Final coordinate-descent step of the phase refinement, radians.
inline constexpr double kPhaseRefineStep = 1e-6;

struct TargetState {
    enum class Kind { kGhz, kW };

    Kind kind;
    double phi1 = 0.0;
    double phi2 = 0.0;
    CVector vector;

    /// (|0...0> + |1...1>) / sqrt(2).
    static TargetState ghz(int num_qubits = 3);
    /// (|ddu> + e^{i phi1} |dud> + e^{i phi2} |udd>) / sqrt(3).
    static TargetState w(double phi1 = 0.0, double phi2 = 0.0);
};

/// <psi|rho|psi>.
double fidelity_pure(const DensityMatrix& rho, const TargetState& target);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity_mixed(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Fidelity with the phase-generalized W state, evaluated from the 3x3 block
/// of rho on the single-up subspace.
double w_phase_objective(const DensityMatrix& rho, double phi1, double phi2);

struct PhaseOptimum {
    /// Wrapped to [-pi, pi).
    double phi1;
    double phi2;
    double fidelity;
};

/// 256 x 256 grid over [0, 2 pi)^2 followed by coordinate descent with step
/// halving down to 1e-6 rad. Grid ties go to the lexicographically smallest
/// (phi1, phi2). Requires three qubits.
PhaseOptimum optimize_w_phases(const DensityMatrix& rho);

enum class Verdict { kGenuineGhzWitnessed, kGenuineWWitnessed, kWitnessInconclusive };

std::string_view verdict_name(Verdict v);

struct ClassificationReport {
    double fidelity_ghz;
    double fidelity_w_max;
    double phi1;
    double phi2;
    bool ghz_witness_passed;
    bool w_witness_passed;
    double offdiag_norm;
    Verdict verdict;
};

/// Witness i passes iff its fidelity exceeds bound + margin (+ round-off).
/// If both pass, the verdict names the one with the larger excess.
ClassificationReport classify(const DensityMatrix& rho, double margin = 0.0);

/// Wraps an angle to [-pi, pi).
double wrap_angle(double phi);

}  // namespace overlapq
