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

#include <cmath>
#include <numbers>
#include <sstream>

#include "overlapq/error.hpp"

namespace overlapq {

std::optional<Spin> parse_spin(std::string_view text) {
    if (text == "down" || text == "d" || text == "H") return Spin::kDown;
    if (text == "up" || text == "u" || text == "V") return Spin::kUp;
    return std::nullopt;
}

TransformSpec TransformSpec::create(CMatrix amplitudes, std::vector<std::vector<SpinSlot>> spins) {
    const auto n = amplitudes.rows();
    const auto m = amplitudes.cols();
    if (n < 1 || m < 1) {
        throw Error(ErrorCode::kInvalidInput, "transformation matrix must be at least 1x1");
    }
    if (static_cast<Eigen::Index>(spins.size()) != n) {
        throw Error(ErrorCode::kInvalidInput, "spin matrix row count does not match amplitude matrix");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(spins[i].size()) != m) {
            std::ostringstream msg;
            msg << "spin matrix row " << i << " has " << spins[i].size() << " entries, expected " << m;
            throw Error(ErrorCode::kInvalidInput, msg.str());
        }
        double norm = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            const Complex t = amplitudes(i, j);
            if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
                throw Error(ErrorCode::kInvalidInput, "transformation amplitude is not finite");
            }
            norm += std::norm(t);
            const bool zero = t == Complex{};
            if (zero == spins[i][j].has_value()) {
                std::ostringstream msg;
                msg << "spin entry (" << i << ", " << j << ") must be "
                    << (zero ? "unused where the amplitude is zero" : "set where the amplitude is nonzero");
                throw Error(ErrorCode::kInvalidInput, msg.str());
            }
        }
        if (norm == 0.0) {
            std::ostringstream msg;
            msg << "row " << i << " of the transformation matrix is zero";
            throw Error(ErrorCode::kInvalidInput, msg.str());
        }
        if (std::abs(norm - 1.0) > kRowNormTolerance) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "row " << i << " of the transformation matrix has squared norm " << norm << ", expected 1";
            throw Error(ErrorCode::kInvalidInput, msg.str());
        }
    }
    return TransformSpec(std::move(amplitudes), std::move(spins));
}

GhzParams GhzParams::balanced() {
    const double h = 1.0 / std::numbers::sqrt2;
    return {h, h, h, h, h, h};
}

namespace {

SpinSlot slot_if_nonzero(Complex amplitude, Spin s) {
    return amplitude == Complex{} ? SpinSlot{} : SpinSlot{s};
}

}  // namespace

TransformSpec ghz_preset(const GhzParams& p) {
    const auto check = [](Complex a, Complex b, const char* name) {
        const double norm = std::norm(a) + std::norm(b);
        if (std::abs(norm - 1.0) > kRowNormTolerance) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "GHZ parameters " << name << " have squared norm " << norm << ", expected 1";
            throw Error(ErrorCode::kInvalidInput, msg.str());
        }
    };
    check(p.alpha1, p.alpha2, "alpha1/alpha2");
    check(p.beta2, p.beta3, "beta2/beta3");
    check(p.gamma1, p.gamma3, "gamma1/gamma3");

    CMatrix t = CMatrix::Zero(3, 3);
    t(0, 0) = p.alpha1;
    t(0, 1) = p.alpha2;
    t(1, 1) = p.beta2;
    t(1, 2) = p.beta3;
    t(2, 0) = p.gamma1;
    t(2, 2) = p.gamma3;

    std::vector<std::vector<SpinSlot>> s(3, std::vector<SpinSlot>(3));
    s[0][0] = slot_if_nonzero(p.alpha1, Spin::kDown);
    s[0][1] = slot_if_nonzero(p.alpha2, Spin::kUp);
    s[1][1] = slot_if_nonzero(p.beta2, Spin::kDown);
    s[1][2] = slot_if_nonzero(p.beta3, Spin::kUp);
    s[2][0] = slot_if_nonzero(p.gamma1, Spin::kUp);
    s[2][2] = slot_if_nonzero(p.gamma3, Spin::kDown);
    return TransformSpec::create(std::move(t), std::move(s));
}

TransformSpec w_preset(const AmplitudeRows& rows) {
    static constexpr std::array<Spin, 3> kRowSpin = {Spin::kDown, Spin::kDown, Spin::kUp};
    CMatrix t(3, 3);
    std::vector<std::vector<SpinSlot>> s(3, std::vector<SpinSlot>(3));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            t(i, j) = rows[i][j];
            s[i][j] = slot_if_nonzero(rows[i][j], kRowSpin[i]);
        }
    }
    return TransformSpec::create(std::move(t), std::move(s));
}

AmplitudeRows balanced_tritter_rows() {
    const Complex v{1.0 / std::sqrt(3.0), 0.0};
    AmplitudeRows rows;
    for (auto& row : rows) row.fill(v);
    return rows;
}

AmplitudeRows dft_tritter_rows() {
    const double scale = 1.0 / std::sqrt(3.0);
    AmplitudeRows rows;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            const double angle = 2.0 * std::numbers::pi * ((j * k) % 3) / 3.0;
            rows[j][k] = std::polar(scale, angle);
        }
    }
    return rows;
}

TransformSpec custom_spec(CMatrix amplitudes, std::vector<std::vector<SpinSlot>> spins) {
    return TransformSpec::create(std::move(amplitudes), std::move(spins));
}

}  // namespace overlapq
