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

#include "overlapq/reduce.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "overlapq/error.hpp"

namespace overlapq {

namespace {

constexpr double kGramHermitianTolerance = 1e-12;
constexpr double kGramPsdTolerance = 1e-9;
constexpr double kMinSuccess = 1e-15;

}  // namespace

GramMatrix GramMatrix::create(CMatrix g) {
    if (g.rows() != g.cols() || g.rows() < 1) {
        throw Error(ErrorCode::kInvalidInput, "Gram matrix must be square and non-empty");
    }
    if (!g.allFinite()) throw Error(ErrorCode::kInvalidInput, "Gram matrix has non-finite entries");
    const auto n = g.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(g(i, i) - Complex{1.0, 0.0}) > kGramHermitianTolerance) {
            std::ostringstream msg;
            msg << "Gram diagonal entry " << i << " must be 1";
            throw Error(ErrorCode::kInvalidInput, msg.str());
        }
        g(i, i) = 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (std::abs(g(i, j) - std::conj(g(j, i))) > kGramHermitianTolerance) {
                std::ostringstream msg;
                msg << "Gram matrix is not Hermitian at (" << i << ", " << j << ")";
                throw Error(ErrorCode::kInvalidInput, msg.str());
            }
            if (std::abs(g(i, j)) > 1.0 + kGramHermitianTolerance) {
                std::ostringstream msg;
                msg << "Gram overlap (" << i << ", " << j << ") exceeds 1 in magnitude";
                throw Error(ErrorCode::kInvalidInput, msg.str());
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(g, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -kGramPsdTolerance) {
        std::ostringstream msg;
        msg << "Gram matrix is not positive semidefinite (min eigenvalue " << min_eig << ")";
        throw Error(ErrorCode::kGramNotPsd, msg.str());
    }
    return GramMatrix(std::move(g));
}

GramMatrix GramMatrix::identity(int n) { return create(CMatrix::Identity(n, n)); }

GramMatrix GramMatrix::ones(int n) { return create(CMatrix::Ones(n, n)); }

GramMatrix GramMatrix::uniform(int n, double g) {
    CMatrix m = CMatrix::Constant(n, n, Complex{g, 0.0});
    m.diagonal().setOnes();
    return create(std::move(m));
}

Eigen::Index basis_index(const std::vector<Spin>& spins) {
    Eigen::Index index = 0;
    for (Spin s : spins) index = (index << 1) | spin_bit(s);
    return index;
}

PostselectedState postselect_no_bunching(const ExpandedState& state) {
    if (!state.transformed()) {
        throw Error(ErrorCode::kInvalidInput, "postselection requires a transformed state");
    }
    const int n = state.num_particles();
    if (state.num_modes() != n) {
        std::ostringstream msg;
        msg << "no-bunching postselection needs as many detectors as particles (got " << state.num_modes()
            << " detectors for " << n << " particles)";
        throw Error(ErrorCode::kUnsupportedConfiguration, msg.str());
    }

    PostselectedState out;
    out.num_particles = n;
    std::map<std::pair<std::vector<Spin>, std::vector<int>>, std::size_t> index;
    for (const auto& term : state.terms()) {
        std::vector<Spin> spins(n);
        std::vector<int> labels(n, -1);
        bool bijective = true;
        for (const auto& p : term.particles) {
            if (labels[p.detector] != -1) {
                bijective = false;
                break;
            }
            labels[p.detector] = p.label;
            spins[p.detector] = p.spin;
        }
        if (!bijective) continue;

        auto key = std::make_pair(spins, labels);
        if (auto it = index.find(key); it != index.end()) {
            out.terms[it->second].amplitude += term.amplitude;
        } else {
            index.emplace(std::move(key), out.terms.size());
            out.terms.push_back({term.amplitude, std::move(spins), std::move(labels)});
        }
    }
    for (const auto& t : out.terms) out.success_raw += std::norm(t.amplitude);
    return out;
}

TracedState trace_distinguishability(const PostselectedState& ps, const GramMatrix& gram) {
    const int n = ps.num_particles;
    if (gram.size() != n) {
        std::ostringstream msg;
        msg << "Gram matrix is " << gram.size() << "x" << gram.size() << " but there are " << n << " particles";
        throw Error(ErrorCode::kInvalidInput, msg.str());
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    CMatrix raw = CMatrix::Zero(dim, dim);

    std::vector<Eigen::Index> rows;
    rows.reserve(ps.terms.size());
    for (const auto& t : ps.terms) {
        for (int label : t.labels) {
            if (label < 0 || label >= n) throw Error(ErrorCode::kInvalidInput, "label index out of range");
        }
        rows.push_back(basis_index(t.spins));
    }

    for (std::size_t a = 0; a < ps.terms.size(); ++a) {
        const auto& ket = ps.terms[a];
        for (std::size_t b = a; b < ps.terms.size(); ++b) {
            const auto& bra = ps.terms[b];
            Complex overlap{1.0, 0.0};
            for (int det = 0; det < n && overlap != Complex{}; ++det) {
                overlap *= gram(bra.labels[det], ket.labels[det]);
            }
            const Complex value = ket.amplitude * std::conj(bra.amplitude) * overlap;
            raw(rows[a], rows[b]) += value;
            if (b != a) raw(rows[b], rows[a]) += std::conj(value);
        }
    }

    const double p_success = raw.trace().real();
    if (!(p_success > kMinSuccess)) {
        std::ostringstream msg;
        msg << "no-bunching postselection has zero success probability (" << p_success << ")";
        throw Error(ErrorCode::kPostselectionImpossible, msg.str());
    }
    return {DensityMatrix::from_matrix(raw / p_success), p_success};
}

GramMatrix gram_from_delays(const DelayModel& model) {
    if (!(model.coherence_length > 0.0) || !std::isfinite(model.coherence_length)) {
        throw Error(ErrorCode::kInvalidInput, "coherence length must be positive");
    }
    const auto n = static_cast<Eigen::Index>(model.delays.size());
    if (n < 1) throw Error(ErrorCode::kInvalidInput, "delay model needs at least one delay");
    CMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double x = (model.delays[i] - model.delays[j]) / model.coherence_length;
            g(i, j) = std::exp(-x * x);
        }
    }
    return GramMatrix::create(std::move(g));
}

}  // namespace overlapq
