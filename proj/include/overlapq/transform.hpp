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

#include <array>
#include <vector>

#include "overlapq/types.hpp"

namespace overlapq {

/// Row-normalization tolerance for transformation amplitudes.
inline constexpr double kRowNormTolerance = 1e-9;

/// An N x M single-particle transformation: particle i reaches detector j
/// with amplitude T(i, j) and internal state S(i, j).
///
/// Only row normalization is enforced. T need not be unitary; the GHZ
/// construction has non-orthogonal columns.
class TransformSpec {
public:
    /// Validates and builds a spec. Throws Error(kInvalidInput) when a row is
    /// not normalized, a row is all zero, shapes disagree, or S is unused
    /// anywhere T is nonzero (or set anywhere T is zero).
    static TransformSpec create(CMatrix amplitudes, std::vector<std::vector<SpinSlot>> spins);

    int num_particles() const { return static_cast<int>(amplitudes_.rows()); }
    int num_modes() const { return static_cast<int>(amplitudes_.cols()); }

    const CMatrix& amplitudes() const { return amplitudes_; }
    Complex amplitude(int particle, int mode) const { return amplitudes_(particle, mode); }
    SpinSlot spin(int particle, int mode) const { return spins_[particle][mode]; }
    const std::vector<std::vector<SpinSlot>>& spins() const { return spins_; }

private:
    TransformSpec(CMatrix amplitudes, std::vector<std::vector<SpinSlot>> spins)
        : amplitudes_(std::move(amplitudes)), spins_(std::move(spins)) {}

    CMatrix amplitudes_;
    std::vector<std::vector<SpinSlot>> spins_;
};

struct GhzParams {
    Complex alpha1, alpha2;
    Complex beta2, beta3;
    Complex gamma1, gamma3;

    /// Every amplitude 1/sqrt(2).
    static GhzParams balanced();
};

using AmplitudeRows = std::array<std::array<Complex, 3>, 3>;

/// Three-particle GHZ-generating map:
///   row 0: (alpha1 down, alpha2 up, 0)
///   row 1: (0, beta2 down, beta3 up)
///   row 2: (gamma1 up, 0, gamma3 down)
/// Spin slots are cleared wherever an amplitude is exactly zero.
TransformSpec ghz_preset(const GhzParams& p);

/// Three-particle W-generating map with full amplitude rows and spin rows
/// (down, down, down), (down, down, down), (up, up, up).
TransformSpec w_preset(const AmplitudeRows& rows);

/// All amplitudes 1/sqrt(3).
AmplitudeRows balanced_tritter_rows();

/// Discrete Fourier tritter, entries omega^(jk)/sqrt(3), omega = exp(2 pi i/3).
AmplitudeRows dft_tritter_rows();

TransformSpec custom_spec(CMatrix amplitudes, std::vector<std::vector<SpinSlot>> spins);

}  // namespace overlapq
