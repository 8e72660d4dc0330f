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

// Random generators and small helpers shared by the test binaries.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "overlapq/density_matrix.hpp"
#include "overlapq/reduce.hpp"
#include "overlapq/tomography.hpp"
#include "overlapq/transform.hpp"

namespace overlapq::testing {

inline Complex random_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return {g(rng), g(rng)};
}

/// Row-normalized N x N transformation with random spins. With
/// zero_probability > 0 some entries are zeroed (never a whole row).
inline TransformSpec random_spec(std::mt19937_64& rng, int n, double zero_probability = 0.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    CMatrix t(n, n);
    std::vector<std::vector<SpinSlot>> s(n, std::vector<SpinSlot>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) t(i, j) = random_complex(rng);
        for (int j = 0; j < n; ++j) {
            if (u(rng) < zero_probability && j != i) t(i, j) = 0.0;
        }
        t.row(i) /= t.row(i).norm();
        for (int j = 0; j < n; ++j) {
            if (t(i, j) != Complex{}) s[i][j] = coin(rng) ? Spin::kUp : Spin::kDown;
        }
    }
    return TransformSpec::create(std::move(t), std::move(s));
}

/// Gram matrix of n random unit vectors in C^dim.
inline GramMatrix random_gram(std::mt19937_64& rng, int n, int dim = 3) {
    CMatrix d(dim, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < dim; ++i) d(i, j) = random_complex(rng);
        d.col(j) /= d.col(j).norm();
    }
    CMatrix g = d.adjoint() * d;
    g = 0.5 * (g + g.adjoint()).eval();
    g.diagonal().setOnes();
    return GramMatrix::create(std::move(g));
}

/// Random full-rank-ish density matrix: A A^dagger / tr with Gaussian A.
inline DensityMatrix random_density(std::mt19937_64& rng, int num_qubits, int rank = -1) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    const Eigen::Index r = rank < 0 ? dim : rank;
    CMatrix a(dim, r);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) a(i, j) = random_complex(rng);
    }
    CMatrix m = a * a.adjoint();
    m /= m.trace().real();
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityMatrix::from_matrix(std::move(m));
}

/// Counts equal to round(p * shots) per outcome, with the rounding remainder
/// put on the largest outcome. Exact when every p * shots is an integer.
inline CountsTable exact_counts(const DensityMatrix& rho, std::uint64_t shots) {
    CountsTable table;
    table.num_qubits = rho.num_qubits();
    table.shots_per_setting = shots;
    for (const auto& setting : all_pauli_settings(rho.num_qubits())) {
        const auto probs = outcome_probabilities(rho, setting);
        std::vector<std::uint64_t> c(probs.size());
        std::uint64_t sum = 0;
        std::size_t largest = 0;
        for (std::size_t o = 0; o < probs.size(); ++o) {
            c[o] = static_cast<std::uint64_t>(std::llround(probs[o] * static_cast<double>(shots)));
            sum += c[o];
            if (probs[o] > probs[largest]) largest = o;
        }
        c[largest] = c[largest] + shots - sum;
        for (std::size_t o = 0; o < probs.size(); ++o) {
            table.rows.push_back({setting, static_cast<std::uint32_t>(o), c[o]});
        }
    }
    return table;
}

inline CVector ghz_vector() {
    CVector v = CVector::Zero(8);
    v(0) = v(7) = 1.0 / std::sqrt(2.0);
    return v;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline double angle_distance(double a, double b) {
    const double d = std::remainder(a - b, 2.0 * M_PI);
    return std::abs(d);
}

}  // namespace overlapq::testing
