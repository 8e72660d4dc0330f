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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "overlapq/error.hpp"
#include "test_support.hpp"

using namespace overlapq;
using overlapq::testing::random_spec;

namespace {

constexpr Spin D = Spin::kDown;
constexpr Spin U = Spin::kUp;

/// Nonzero choice functions counted with explicit nested loops.
int count_nonzero_choices(const CMatrix& t) {
    int count = 0;
    for (int a = 0; a < t.cols(); ++a)
        for (int b = 0; b < t.cols(); ++b)
            for (int c = 0; c < t.cols(); ++c)
                if (t(0, a) != Complex{} && t(1, b) != Complex{} && t(2, c) != Complex{}) ++count;
    return count;
}

}  // namespace

TEST(InitialState, WInputSpins) {
    const std::vector<Spin> spins = {D, D, U};
    const ExpandedState s = initial_state(spins);
    ASSERT_EQ(term_count(s), 1u);
    EXPECT_FALSE(s.transformed());
    const auto& term = s.terms().front();
    EXPECT_EQ(term.amplitude, Complex(1.0, 0.0));
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(term.particles[k].label, k);
        EXPECT_EQ(term.particles[k].detector, kUnassignedDetector);
        EXPECT_EQ(term.particles[k].spin, spins[k]);
    }
}

TEST(InitialState, SingleAndPair) {
    const std::vector<Spin> one = {D};
    EXPECT_EQ(initial_state(one).num_particles(), 1);
    const std::vector<Spin> two = {U, U};
    const auto s = initial_state(two);
    EXPECT_EQ(s.terms().front().particles[0].spin, U);
    EXPECT_EQ(s.terms().front().particles[1].spin, U);
}

TEST(InitialState, EmptyIsRejected) {
    EXPECT_THROW(initial_state(std::vector<Spin>{}), Error);
}

TEST(ApplyTransform, GhzBalancedHasEightTerms) {
    const TransformSpec spec = ghz_preset(GhzParams::balanced());
    const std::vector<Spin> spins = {D, D, U};
    const ExpandedState s = apply_transform(initial_state(spins), spec);
    EXPECT_EQ(static_cast<int>(term_count(s)), count_nonzero_choices(spec.amplitudes()));
    EXPECT_EQ(term_count(s), 8u);
    const double expected = std::pow(1.0 / std::sqrt(2.0), 3);
    for (const auto& t : s.terms()) EXPECT_NEAR(std::abs(t.amplitude - expected), 0.0, 1e-15);
}

TEST(ApplyTransform, BalancedTritterHasTwentySevenTerms) {
    const TransformSpec spec = w_preset(balanced_tritter_rows());
    const std::vector<Spin> spins = {D, D, U};
    EXPECT_EQ(term_count(apply_transform(initial_state(spins), spec)), 27u);
}

TEST(ApplyTransform, SingleParticleIdentity) {
    CMatrix t(1, 1);
    t << 1.0;
    const TransformSpec spec = custom_spec(t, {{D}});
    const std::vector<Spin> spins = {D};
    const ExpandedState s = apply_transform(initial_state(spins), spec);
    ASSERT_EQ(term_count(s), 1u);
    EXPECT_EQ(s.terms()[0].amplitude, Complex(1.0, 0.0));
    EXPECT_EQ(s.terms()[0].particles[0].detector, 0);
}

TEST(ApplyTransform, TermsAreInLexicographicChoiceOrder) {
    const TransformSpec spec = w_preset(balanced_tritter_rows());
    const std::vector<Spin> spins = {D, D, U};
    const ExpandedState s = apply_transform(initial_state(spins), spec);
    int index = 0;
    for (const auto& t : s.terms()) {
        const int code = t.particles[0].detector * 9 + t.particles[1].detector * 3 + t.particles[2].detector;
        EXPECT_EQ(code, index++);
    }
}

TEST(ApplyTransform, RejectsSecondApplicationAndDimensionMismatch) {
    const TransformSpec spec = w_preset(balanced_tritter_rows());
    const std::vector<Spin> spins = {D, D, U};
    const ExpandedState s = apply_transform(initial_state(spins), spec);
    try {
        apply_transform(s, spec);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kStateAlreadyTransformed);
    }
    const std::vector<Spin> two = {D, U};
    try {
        apply_transform(initial_state(two), spec);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
    }
}

TEST(AmplitudeOf, GhzAllDownAssignment) {
    const TransformSpec spec = ghz_preset(GhzParams::balanced());
    const std::vector<Spin> spins = {D, D, D};
    const ExpandedState s = apply_transform(initial_state(spins), spec);
    const std::vector<SingleParticleKet> all_down = {{0, D, 0}, {1, D, 1}, {2, D, 2}};
    EXPECT_NEAR(std::abs(amplitude_of(s, all_down) - std::pow(0.5, 1.5)), 0.0, 1e-15);
    const std::vector<SingleParticleKet> absent = {{2, D, 0}, {1, D, 1}, {2, D, 2}};
    EXPECT_EQ(amplitude_of(s, absent), Complex{});
}

TEST(AmplitudeOf, DftTritterIsProductOfEntries) {
    const TransformSpec spec = w_preset(dft_tritter_rows());
    const std::vector<Spin> spins = {D, D, U};
    const ExpandedState s = apply_transform(initial_state(spins), spec);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                const std::vector<SingleParticleKet> assignment = {{a, D, 0}, {b, D, 1}, {c, U, 2}};
                const Complex direct = spec.amplitude(0, a) * spec.amplitude(1, b) * spec.amplitude(2, c);
                EXPECT_NEAR(std::abs(amplitude_of(s, assignment) - direct), 0.0, 1e-12);
            }
}

// Properties over random specs.

TEST(ExpansionProperties, CompletenessFactorizationAndNormalization) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 3;
        const TransformSpec spec = random_spec(rng, n, trial % 2 ? 0.3 : 0.0);
        const std::vector<Spin> spins(n, D);
        const ExpandedState s = apply_transform(initial_state(spins), spec);

        std::size_t expected_terms = 1;
        for (int k = 0; k < n; ++k) {
            std::size_t nonzero = 0;
            for (int j = 0; j < n; ++j) nonzero += spec.amplitude(k, j) != Complex{};
            expected_terms *= nonzero;
        }
        EXPECT_EQ(term_count(s), expected_terms);

        double total = 0.0;
        for (const auto& t : s.terms()) {
            Complex product = 1.0;
            for (int k = 0; k < n; ++k) {
                EXPECT_EQ(t.particles[k].label, k);
                product *= spec.amplitude(k, t.particles[k].detector);
                EXPECT_EQ(t.particles[k].spin, *spec.spin(k, t.particles[k].detector));
            }
            EXPECT_NEAR(std::abs(t.amplitude - product), 0.0, 1e-12);
            total += std::norm(t.amplitude);
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(ExpansionProperties, ScalingARowScalesItsTerms) {
    std::mt19937_64 rng(7);
    const TransformSpec spec = random_spec(rng, 3);
    const Complex phase = std::polar(1.0, 0.7);
    CMatrix scaled = spec.amplitudes();
    scaled.row(1) *= phase;
    const TransformSpec spec2 = custom_spec(scaled, spec.spins());
    const std::vector<Spin> spins(3, D);
    const auto a = apply_transform(initial_state(spins), spec);
    const auto b = apply_transform(initial_state(spins), spec2);
    ASSERT_EQ(term_count(a), term_count(b));
    for (std::size_t i = 0; i < term_count(a); ++i) {
        EXPECT_NEAR(std::abs(b.terms()[i].amplitude - phase * a.terms()[i].amplitude), 0.0, 1e-12);
    }
}
