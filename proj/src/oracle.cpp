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

#include "overlapq/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "overlapq/error.hpp"

namespace overlapq::oracle {

std::vector<LabeledOutcome> enumerate_no_bunching(const TransformSpec& spec) {
    const int n = spec.num_particles();
    if (spec.num_modes() != n) {
        throw Error(ErrorCode::kUnsupportedConfiguration, "oracle requires as many detectors as particles");
    }
    if (n > kMaxBruteParticles) {
        throw Error(ErrorCode::kSizeLimit, "oracle enumeration is limited to 5 particles");
    }
    std::vector<int> sigma(n);  // particle -> detector
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<LabeledOutcome> out;
    do {
        LabeledOutcome o;
        o.amplitude = 1.0;
        o.labels_by_detector.assign(n, 0);
        for (int k = 0; k < n; ++k) {
            const Complex t = spec.amplitude(k, sigma[k]);
            o.amplitude *= t;
            if (t == Complex{}) break;
            o.assignment[k] = {sigma[k], *spec.spin(k, sigma[k])};
            o.labels_by_detector[sigma[k]] = k;
        }
        if (o.amplitude != Complex{}) out.push_back(std::move(o));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

BruteResult brute_density_matrix(const TransformSpec& spec, const GramMatrix& gram) {
    const auto outcomes = enumerate_no_bunching(spec);
    const int n = spec.num_particles();
    const Eigen::Index dim = Eigen::Index{1} << n;

    auto row_of = [n](const LabeledOutcome& o) {
        Eigen::Index r = 0;
        for (const auto& [particle, slot] : o.assignment) {
            if (slot.second == Spin::kUp) r |= Eigen::Index{1} << (n - 1 - slot.first);
        }
        return r;
    };

    CMatrix raw = CMatrix::Zero(dim, dim);
    for (const auto& ket : outcomes) {
        for (const auto& bra : outcomes) {
            // <bra labels | ket labels>, one overlap per detector.
            Complex overlap = 1.0;
            for (int det = 0; det < n; ++det) {
                overlap *= gram.matrix()(bra.labels_by_detector[det], ket.labels_by_detector[det]);
            }
            raw(row_of(ket), row_of(bra)) += ket.amplitude * std::conj(bra.amplitude) * overlap;
        }
    }
    const double p = raw.trace().real();
    if (!(p > 1e-15)) throw Error(ErrorCode::kPostselectionImpossible, "oracle: zero success probability");
    return {raw / p, p};
}

Complex permanent(const CMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::kInvalidInput, "permanent of a non-square matrix");
    const auto k = static_cast<int>(m.rows());
    if (k > kMaxPermanentSize) throw Error(ErrorCode::kSizeLimit, "permanent limited to 12x12");
    if (k == 0) return 1.0;
    // Ryser: perm = (-1)^k sum_{S} (-1)^{|S|} prod_i sum_{j in S} m_ij
    Complex total{};
    for (unsigned subset = 1; subset < (1U << k); ++subset) {
        Complex prod = 1.0;
        for (int i = 0; i < k; ++i) {
            Complex row{};
            for (int j = 0; j < k; ++j) {
                if (subset & (1U << j)) row += m(i, j);
            }
            prod *= row;
        }
        const int bits = std::popcount(subset);
        total += ((k - bits) % 2 == 0) ? prod : -prod;
    }
    return total;
}

Complex permanent_naive(const CMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::kInvalidInput, "permanent of a non-square matrix");
    const auto k = static_cast<int>(m.rows());
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Complex total{};
    do {
        Complex prod = 1.0;
        for (int i = 0; i < k; ++i) prod *= m(i, perm[i]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace overlapq::oracle
