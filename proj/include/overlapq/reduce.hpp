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

// No-bunching postselection and the trace over distinguishability labels.

#include <vector>

#include "overlapq/density_matrix.hpp"
#include "overlapq/expansion.hpp"
#include "overlapq/types.hpp"

namespace overlapq {

/// Pairwise overlaps G(i, j) = <d_i|d_j> of the distinguishability labels.
class GramMatrix {
public:
    /// Throws Error(kInvalidInput) unless Hermitian (1e-12), unit diagonal,
    /// and |G(i, j)| <= 1; Error(kGramNotPsd) if an eigenvalue is below -1e-9.
    static GramMatrix create(CMatrix g);

    static GramMatrix identity(int n);
    static GramMatrix ones(int n);
    /// Real overlap g between every distinct pair.
    static GramMatrix uniform(int n, double g);

    int size() const { return static_cast<int>(g_.rows()); }
    const CMatrix& matrix() const { return g_; }
    Complex operator()(int i, int j) const { return g_(i, j); }

private:
    explicit GramMatrix(CMatrix g) : g_(std::move(g)) {}
    CMatrix g_;
};

struct PostselectedTerm {
    Complex amplitude;
    /// Indexed by detector.
    std::vector<Spin> spins;
    std::vector<int> labels;
};

struct PostselectedState {
    int num_particles = 0;
    std::vector<PostselectedTerm> terms;
    /// Sum of |amplitude|^2 over the surviving terms; equals the success
    /// probability when every particle is fully distinguishable.
    double success_raw = 0.0;
};

/// Keeps the terms that put exactly one particle in each detector and
/// reorders each by detector. Throws Error(kUnsupportedConfiguration) if
/// M != N and Error(kInvalidInput) for an untransformed state.
PostselectedState postselect_no_bunching(const ExpandedState& state);

struct TracedState {
    DensityMatrix rho;
    double p_success;
};

/// Unnormalized entries
///   rho[s, s'] = sum_{t: s, t': s'} a_t conj(a_t') prod_det G(label_t'(det), label_t(det))
/// then normalized by the trace. Throws Error(kPostselectionImpossible) when
/// the trace is <= 1e-15.
TracedState trace_distinguishability(const PostselectedState& ps, const GramMatrix& gram);

/// Index of a spin pattern in the density-matrix basis.
Eigen::Index basis_index(const std::vector<Spin>& spins);

struct DelayModel {
    double coherence_length = 1.0;
    std::vector<double> delays;
};

/// Gaussian mutual coherence: G(i, j) = exp(-((L_i - L_j) / L_c)^2).
GramMatrix gram_from_delays(const DelayModel& model);

}  // namespace overlapq
