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

// Brute-force reference path for tests. Deliberately shares no expansion or
// tracing code with expansion.cpp / reduce.cpp: it enumerates no-bunching
// bijections straight from the transformation matrix.

#include <map>
#include <vector>

#include "overlapq/reduce.hpp"
#include "overlapq/transform.hpp"

namespace overlapq::oracle {

inline constexpr int kMaxBruteParticles = 5;
inline constexpr int kMaxPermanentSize = 12;

/// Particle k -> (detector, spin); the ket labels are the particle indices
/// read off in detector order.
struct LabeledOutcome {
    std::map<int, std::pair<int, Spin>> assignment;
    std::vector<int> labels_by_detector;
    Complex amplitude;
};

/// Every no-bunching outcome of spec, in std::next_permutation order.
std::vector<LabeledOutcome> enumerate_no_bunching(const TransformSpec& spec);

struct BruteResult {
    CMatrix rho;  // normalized
    double p_success;
};

/// Requires N == M <= 5. Throws Error(kSizeLimit) beyond that.
BruteResult brute_density_matrix(const TransformSpec& spec, const GramMatrix& gram);

/// Ryser's formula. Throws for non-square or K > 12.
Complex permanent(const CMatrix& m);

/// Sum over all K! permutations.
Complex permanent_naive(const CMatrix& m);

}  // namespace overlapq::oracle
