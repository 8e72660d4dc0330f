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

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace overlapq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Binary internal state. Down is basis bit 0 (horizontal polarization),
/// up is bit 1 (vertical).
enum class Spin : std::uint8_t { kDown = 0, kUp = 1 };

/// Entry of the internal-state distribution matrix; empty where the
/// corresponding transformation amplitude is zero.
using SpinSlot = std::optional<Spin>;

constexpr int spin_bit(Spin s) { return s == Spin::kUp ? 1 : 0; }

constexpr char spin_char(Spin s) { return s == Spin::kUp ? 'u' : 'd'; }

std::optional<Spin> parse_spin(std::string_view text);

}  // namespace overlapq
