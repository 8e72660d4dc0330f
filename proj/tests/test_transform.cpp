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

#include "overlapq/transform.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "overlapq/error.hpp"

using namespace overlapq;

namespace {

constexpr Spin D = Spin::kDown;
constexpr Spin U = Spin::kUp;

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an overlapq::Error";
    return ErrorCode::kParse;
}

}  // namespace

TEST(GhzPreset, BalancedStructureMatchesZeroAndSpinPattern) {
    const TransformSpec spec = ghz_preset(GhzParams::balanced());
    ASSERT_EQ(spec.num_particles(), 3);
    ASSERT_EQ(spec.num_modes(), 3);

    const double h = 1.0 / std::numbers::sqrt2;
    const bool nonzero[3][3] = {{true, true, false}, {false, true, true}, {true, false, true}};
    const SpinSlot spins[3][3] = {{D, U, {}}, {{}, D, U}, {U, {}, D}};
    int count = 0;
    for (int i = 0; i < 3; ++i) {
        double norm = 0.0;
        for (int j = 0; j < 3; ++j) {
            norm += std::norm(spec.amplitude(i, j));
            EXPECT_EQ(spec.amplitude(i, j) != Complex{}, nonzero[i][j]) << i << "," << j;
            if (nonzero[i][j]) {
                EXPECT_NEAR(std::abs(spec.amplitude(i, j) - h), 0.0, 1e-15);
                ++count;
            }
            EXPECT_EQ(spec.spin(i, j), spins[i][j]) << i << "," << j;
        }
        EXPECT_NEAR(norm, 1.0, 1e-12);
    }
    EXPECT_EQ(count, 6);
}

TEST(GhzPreset, PassesValidationDespiteNonUnitarity) {
    const TransformSpec spec = ghz_preset(GhzParams::balanced());
    const CMatrix gram = spec.amplitudes().adjoint() * spec.amplitudes();
    // Columns 0 and 1 overlap through row 0.
    EXPECT_GT(std::abs(gram(0, 1)), 0.1);
}

TEST(GhzPreset, DeterministicRoutingClearsUnusedSpins) {
    GhzParams p{1.0, 0.0, 1.0, 0.0, 0.0, 1.0};
    const TransformSpec spec = ghz_preset(p);
    EXPECT_FALSE(spec.spin(0, 1).has_value());
    EXPECT_EQ(spec.spin(0, 0), SpinSlot{D});
}

TEST(GhzPreset, AcceptsUnequalNormalizedRow) {
    GhzParams p = GhzParams::balanced();
    p.alpha1 = 0.6;
    p.alpha2 = 0.8;
    EXPECT_NO_THROW(ghz_preset(p));
}

TEST(GhzPreset, RejectsNormalizationViolation) {
    GhzParams p = GhzParams::balanced();
    p.beta3 = 0.5;
    EXPECT_EQ(code_of([&] { ghz_preset(p); }), ErrorCode::kInvalidInput);
}

TEST(WPreset, BalancedTritterSpinRows) {
    const TransformSpec spec = w_preset(balanced_tritter_rows());
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            EXPECT_NEAR(std::abs(spec.amplitude(i, j)), 1.0 / std::sqrt(3.0), 1e-15);
            EXPECT_EQ(spec.spin(i, j), SpinSlot{i == 2 ? U : D});
        }
    }
}

TEST(WPreset, IdentityRowsAreValid) {
    AmplitudeRows rows{};
    for (int i = 0; i < 3; ++i) rows[i][i] = 1.0;
    const TransformSpec spec = w_preset(rows);
    EXPECT_FALSE(spec.spin(0, 1).has_value());
    EXPECT_EQ(spec.spin(2, 2), SpinSlot{U});
}

TEST(WPreset, DftTritterIsUnitary) {
    const TransformSpec spec = w_preset(dft_tritter_rows());
    const CMatrix t = spec.amplitudes();
    // Row norms by direct summation.
    for (int i = 0; i < 3; ++i) {
        double norm = 0.0;
        for (int j = 0; j < 3; ++j) norm += std::norm(t(i, j));
        EXPECT_NEAR(norm, 1.0, 1e-14);
    }
    EXPECT_LT((t * t.adjoint() - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(WPreset, RejectsUnnormalizedRow) {
    AmplitudeRows rows = balanced_tritter_rows();
    rows[1][0] = 0.9;
    EXPECT_EQ(code_of([&] { w_preset(rows); }), ErrorCode::kInvalidInput);
}

TEST(CustomSpec, TwoParticleBeamsplitter) {
    const double h = 1.0 / std::numbers::sqrt2;
    CMatrix t(2, 2);
    t << h, h, h, -h;
    const TransformSpec spec = custom_spec(t, {{D, D}, {U, U}});
    EXPECT_EQ(spec.num_particles(), 2);
    EXPECT_EQ(spec.num_modes(), 2);
}

TEST(CustomSpec, RejectsNonNormalizedRow) {
    CMatrix t(2, 2);
    t << 1.0, 0.5, 0.0, 1.0;
    EXPECT_EQ(code_of([&] { custom_spec(t, {{D, D}, {{}, U}}); }), ErrorCode::kInvalidInput);
}

TEST(CustomSpec, RejectsZeroRow) {
    CMatrix t(2, 2);
    t << 1.0, 0.0, 0.0, 0.0;
    EXPECT_EQ(code_of([&] { custom_spec(t, {{D, {}}, {{}, {}}}); }), ErrorCode::kInvalidInput);
}

TEST(CustomSpec, RejectsSpinMismatchWithZeroPattern) {
    CMatrix t(1, 2);
    t << 1.0, 0.0;
    EXPECT_EQ(code_of([&] { custom_spec(t, {{D, U}}); }), ErrorCode::kInvalidInput);
    CMatrix full(1, 2);
    full << 0.6, 0.8;
    EXPECT_EQ(code_of([&] { custom_spec(full, {{D, {}}}); }), ErrorCode::kInvalidInput);
}

TEST(CustomSpec, RejectsShapeMismatch) {
    CMatrix t(1, 2);
    t << 0.6, 0.8;
    EXPECT_EQ(code_of([&] { custom_spec(t, {{D}}); }), ErrorCode::kInvalidInput);
    EXPECT_EQ(code_of([&] { custom_spec(t, {}); }), ErrorCode::kInvalidInput);
}
