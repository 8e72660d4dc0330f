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

#include "overlapq/tomography.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "overlapq/entanglement.hpp"
#include "overlapq/error.hpp"
#include "test_support.hpp"

using namespace overlapq;
using overlapq::testing::exact_counts;
using overlapq::testing::ghz_vector;
using overlapq::testing::max_abs_diff;

namespace {

DensityMatrix ghz() { return DensityMatrix::pure(ghz_vector()); }

double trace_distance(const CMatrix& a, const CMatrix& b) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

CountsTable simulate_all(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed) {
    const auto settings = all_pauli_settings(rho.num_qubits());
    return simulate_counts(rho, settings, shots, seed);
}

std::uint64_t count_of(const CountsTable& t, const std::string& setting, std::uint32_t outcome) {
    for (const auto& r : t.rows)
        if (r.setting.to_string() == setting && r.outcome == outcome) return r.count;
    return 0;
}

}  // namespace

TEST(Settings, AllPauliOrder) {
    const auto s = all_pauli_settings(2);
    ASSERT_EQ(s.size(), 9u);
    EXPECT_EQ(s.front().to_string(), "XX");
    EXPECT_EQ(s[1].to_string(), "XY");
    EXPECT_EQ(s[3].to_string(), "YX");
    EXPECT_EQ(s.back().to_string(), "ZZ");
    EXPECT_EQ(all_pauli_settings(3).size(), 27u);
    EXPECT_EQ(MeasurementSetting::parse("XYZ").to_string(), "XYZ");
    EXPECT_THROW(MeasurementSetting::parse("XQZ"), Error);
    EXPECT_THROW(MeasurementSetting::parse(""), Error);
}

TEST(Born, ComputationalEigenstate) {
    CVector v = CVector::Zero(8);
    v(5) = 1.0;  // |udu>
    const auto p = outcome_probabilities(DensityMatrix::pure(v), MeasurementSetting::parse("ZZZ"));
    for (std::size_t o = 0; o < 8; ++o) EXPECT_NEAR(p[o], o == 5 ? 1.0 : 0.0, 1e-15);
}

TEST(Born, XBasisPlusState) {
    CVector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const auto px = outcome_probabilities(DensityMatrix::pure(plus), MeasurementSetting::parse("X"));
    EXPECT_NEAR(px[0], 1.0, 1e-15);
    CVector plus_i(2);
    plus_i << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));
    const auto py = outcome_probabilities(DensityMatrix::pure(plus_i), MeasurementSetting::parse("Y"));
    EXPECT_NEAR(py[0], 1.0, 1e-15);
}

TEST(Born, GhzParityInXXX) {
    const auto p = outcome_probabilities(ghz(), MeasurementSetting::parse("XXX"));
    for (std::uint32_t o = 0; o < 8; ++o) {
        const int ones = std::popcount(o);
        EXPECT_NEAR(p[o], ones % 2 == 0 ? 0.25 : 0.0, 1e-15);
    }
}

TEST(Sampling, GhzZZZIsBinomial) {
    const MeasurementSetting zzz = MeasurementSetting::parse("ZZZ");
    const CountsTable t = simulate_counts(ghz(), std::span(&zzz, 1), 100000, 7);
    t.validate();
    const double n000 = static_cast<double>(count_of(t, "ZZZ", 0));
    const double n111 = static_cast<double>(count_of(t, "ZZZ", 7));
    EXPECT_EQ(n000 + n111, 100000.0);
    // 5 sigma of Binomial(1e5, 1/2) is about 790.
    EXPECT_LT(std::abs(n000 - 50000.0), 790.0);
}

TEST(Sampling, MaximallyMixedIsUniform) {
    const CountsTable t = simulate_all(DensityMatrix::maximally_mixed(3), 80000, 3);
    t.validate();
    // Chi-square per setting with 7 dof; the 99.99th percentile is about 29.9.
    for (const auto& s : all_pauli_settings(3)) {
        double chi2 = 0.0;
        for (std::uint32_t o = 0; o < 8; ++o) {
            const double d = static_cast<double>(count_of(t, s.to_string(), o)) - 10000.0;
            chi2 += d * d / 10000.0;
        }
        EXPECT_LT(chi2, 29.9) << s.to_string();
    }
}

TEST(Sampling, DeterministicBySeed) {
    const DensityMatrix rho = ghz();
    const CountsTable a = simulate_all(rho, 1000, 42);
    const CountsTable b = simulate_all(rho, 1000, 42);
    const CountsTable c = simulate_all(rho, 1000, 43);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    bool differs = false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].count, b.rows[i].count);
        differs |= a.rows[i].count != c.rows[i].count;
    }
    EXPECT_TRUE(differs);
}

TEST(Linear, ExactCountsRecoverGhz) {
    const CMatrix rho = reconstruct_linear(exact_counts(ghz(), 8000));
    EXPECT_LT(max_abs_diff(rho, ghz().matrix()), 1e-9);
}

TEST(Linear, ExactCountsRecoverRandomSingleQubitStates) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = overlapq::testing::random_density(rng, 1);
        // Rounding error of at most 0.5 / shots per probability.
        const CMatrix est = reconstruct_linear(exact_counts(rho, 1000000));
        EXPECT_LT(max_abs_diff(est, rho.matrix()), 2e-6);
    }
}

TEST(Linear, IncompleteSettingsAreRejected) {
    CountsTable t = exact_counts(ghz(), 8000);
    std::erase_if(t.rows, [](const CountsRow& r) { return r.setting.to_string() == "XYZ"; });
    try {
        reconstruct_linear(t);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kIncompleteSettings);
    }
    EXPECT_THROW(reconstruct_mle(t), Error);
}

TEST(Mle, GhzFromFiniteShots) {
    const MleResult r = reconstruct_mle(simulate_all(ghz(), 100000, 11));
    EXPECT_TRUE(r.converged);
    EXPECT_GE(fidelity_pure(r.rho, TargetState::ghz()), 0.99);
}

TEST(Mle, MaximallyMixedFromFiniteShots) {
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(3);
    const MleResult r = reconstruct_mle(simulate_all(mixed, 100000, 12));
    EXPECT_LE(trace_distance(r.rho.matrix(), mixed.matrix()), 0.02);
}

TEST(Mle, ExactCountsOfFullRankStateAreRecovered) {
    const CVector g = ghz_vector();
    const DensityMatrix source =
        DensityMatrix::from_matrix(0.7 * g * g.adjoint() + 0.3 * CMatrix::Identity(8, 8) / 8.0);
    MleOptions options;
    options.tol = 1e-15;
    const MleResult r = reconstruct_mle(exact_counts(source, 80000), options);
    EXPECT_LT(max_abs_diff(r.rho.matrix(), source.matrix()), 1e-6);
}

TEST(Mle, LikelihoodNeverDecreases) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 4; ++trial) {
        const DensityMatrix rho = overlapq::testing::random_density(rng, 2, 1 + trial % 2);
        const MleResult r = reconstruct_mle(simulate_all(rho, 500, 100 + trial));
        ASSERT_GE(r.log_likelihood.size(), 2u);
        for (std::size_t i = 1; i < r.log_likelihood.size(); ++i) {
            EXPECT_GE(r.log_likelihood[i], r.log_likelihood[i - 1] - 1e-12);
        }
    }
}

TEST(Mle, OutputIsAlwaysADensityMatrix) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        const int qubits = 1 + trial % 3;
        const DensityMatrix rho = overlapq::testing::random_density(rng, qubits, 1);
        MleOptions options;
        options.max_iters = 200;
        const MleResult r = reconstruct_mle(simulate_all(rho, 50, 200 + trial), options);
        const DensityDiagnostics d = diagnose_density(r.rho.matrix());
        EXPECT_NEAR(r.rho.matrix().trace().real(), 1.0, 1e-10);
        EXPECT_GE(d.min_eigenvalue, -1e-10);
        EXPECT_LE(d.hermitian_error, 1e-10);
    }
}

TEST(Mle, RoundTripFidelityImprovesWithShots) {
    std::mt19937_64 rng(19);
    const DensityMatrix source = overlapq::testing::random_density(rng, 3, 2);
    const std::pair<std::uint64_t, double> cases[] = {{1000, 0.95}, {10000, 0.98}, {100000, 0.99}};
    for (const auto& [shots, threshold] : cases) {
        const MleResult r = reconstruct_mle(simulate_all(source, shots, 23));
        EXPECT_GE(fidelity_mixed(r.rho, source), threshold) << shots;
    }
}

TEST(CountsFile, RoundTrip) {
    CountsTable t = simulate_all(ghz(), 1000, 5);
    std::stringstream buffer;
    write_counts(buffer, t);
    const CountsTable back = read_counts(buffer);
    EXPECT_EQ(back.num_qubits, 3);
    EXPECT_EQ(back.shots_per_setting, 1000u);
    EXPECT_EQ(back.seed, t.seed);
    ASSERT_EQ(back.rows.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_EQ(back.rows[i].setting, t.rows[i].setting);
        EXPECT_EQ(back.rows[i].outcome, t.rows[i].outcome);
        EXPECT_EQ(back.rows[i].count, t.rows[i].count);
    }
}

TEST(CountsFile, TruncatedFileIsAParseError) {
    std::stringstream buffer;
    write_counts(buffer, simulate_all(ghz(), 1000, 5));
    std::string text = buffer.str();
    text.resize(text.size() / 2);
    text.resize(text.rfind('\n') + 1);
    std::istringstream in(text);
    try {
        read_counts(in);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kParse);
    }
}

TEST(CountsFile, MalformedRowNamesItsLine) {
    std::istringstream in("# overlapq counts v1\n# qubits: 1\n# shots: 10\nsetting,outcome,count\nX,0,4\nX,1,six\n");
    try {
        read_counts(in);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kParse);
        EXPECT_NE(std::string(e.what()).find("line 6"), std::string::npos) << e.what();
    }
}
