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

#include "overlapq/expansion.hpp"

#include <sstream>

#include "overlapq/error.hpp"

namespace overlapq {

ExpandedState initial_state(std::span<const Spin> spins) {
    if (spins.empty()) {
        throw Error(ErrorCode::kInvalidInput, "initial state needs at least one particle");
    }
    ExpandedState state;
    state.num_particles_ = static_cast<int>(spins.size());
    ProductTerm term{Complex{1.0, 0.0}, {}};
    term.particles.reserve(spins.size());
    for (std::size_t k = 0; k < spins.size(); ++k) {
        term.particles.push_back({kUnassignedDetector, spins[k], static_cast<int>(k)});
    }
    state.terms_.push_back(std::move(term));
    return state;
}

ExpandedState apply_transform(const ExpandedState& state, const TransformSpec& spec) {
    if (state.transformed()) {
        throw Error(ErrorCode::kStateAlreadyTransformed, "transformation already applied to this state");
    }
    const int n = state.num_particles();
    const int m = spec.num_modes();
    if (spec.num_particles() != n) {
        std::ostringstream msg;
        msg << "transformation has " << spec.num_particles() << " rows but the state has " << n
            << " particles";
        throw Error(ErrorCode::kInvalidInput, msg.str());
    }

    // Nonzero detector choices per particle, ascending.
    std::vector<std::vector<int>> choices(n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < m; ++j) {
            if (spec.amplitude(k, j) != Complex{}) choices[k].push_back(j);
        }
    }

    ExpandedState out;
    out.num_particles_ = n;
    out.num_modes_ = m;

    const ProductTerm& source = state.terms().front();
    std::vector<std::size_t> odometer(n, 0);
    while (true) {
        ProductTerm term{source.amplitude, source.particles};
        for (int k = 0; k < n; ++k) {
            const int j = choices[k][odometer[k]];
            term.amplitude *= spec.amplitude(k, j);
            term.particles[k].detector = j;
            term.particles[k].spin = *spec.spin(k, j);
        }
        out.terms_.push_back(std::move(term));

        int k = n - 1;
        while (k >= 0 && ++odometer[k] == choices[k].size()) {
            odometer[k] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return out;
}

std::size_t term_count(const ExpandedState& state) { return state.terms().size(); }

Complex amplitude_of(const ExpandedState& state, std::span<const SingleParticleKet> assignment) {
    if (static_cast<int>(assignment.size()) != state.num_particles()) return {};
    for (const auto& term : state.terms()) {
        if (std::equal(term.particles.begin(), term.particles.end(), assignment.begin())) {
            return term.amplitude;
        }
    }
    return {};
}

}  // namespace overlapq
