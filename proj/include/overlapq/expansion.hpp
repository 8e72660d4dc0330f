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

// Many-particle states as weighted sums of product terms, and the
// distributive expansion of the N-fold transformation product.
//
// NOTE: the raw expansion keeps outcomes with several particles in one
// detector but WITHOUT the bosonic sqrt(n!) occupation factors. Those terms
// are only ever discarded by no-bunching postselection; their amplitudes are
// not physical bunching amplitudes.

#include <span>
#include <vector>

#include "overlapq/transform.hpp"
#include "overlapq/types.hpp"

namespace overlapq {

/// Detector value of a particle that has not been transformed yet.
inline constexpr int kUnassignedDetector = -1;

struct SingleParticleKet {
    int detector = kUnassignedDetector;
    Spin spin = Spin::kDown;
    /// Distinguishability label: index of the source particle.
    int label = 0;

    friend bool operator==(const SingleParticleKet&, const SingleParticleKet&) = default;
};

/// One summand. particles[k] is source particle k and carries label k.
struct ProductTerm {
    Complex amplitude;
    std::vector<SingleParticleKet> particles;
};

/// Immutable after construction.
class ExpandedState {
public:
    int num_particles() const { return num_particles_; }
    /// Zero before the transformation is applied.
    int num_modes() const { return num_modes_; }
    bool transformed() const { return num_modes_ > 0; }
    const std::vector<ProductTerm>& terms() const { return terms_; }

private:
    friend ExpandedState initial_state(std::span<const Spin> spins);
    friend ExpandedState apply_transform(const ExpandedState& state, const TransformSpec& spec);

    int num_particles_ = 0;
    int num_modes_ = 0;
    std::vector<ProductTerm> terms_;
};

/// Single term of amplitude 1 with every particle at its source.
ExpandedState initial_state(std::span<const Spin> spins);

/// Expands prod_k (sum_j T[k][j] b_kj^dagger). One term per choice function
/// j(.) with all T[k][j(k)] nonzero, in lexicographic order of
/// (j(0), ..., j(N-1)). Spins come from the spec's S matrix.
ExpandedState apply_transform(const ExpandedState& state, const TransformSpec& spec);

std::size_t term_count(const ExpandedState& state);

/// Amplitude of the term whose particle k sits at assignment[k]
/// (detector and spin; label must equal k). Zero if absent.
Complex amplitude_of(const ExpandedState& state, std::span<const SingleParticleKet> assignment);

}  // namespace overlapq
