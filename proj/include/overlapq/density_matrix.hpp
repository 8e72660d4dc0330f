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

#include <string>

#include "overlapq/types.hpp"

namespace overlapq {

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-9;
inline constexpr double kTraceTolerance = 1e-10;

/// Deviation of a square matrix from the density-matrix invariants.
struct DensityDiagnostics {
    double hermitian_error = 0.0;  // max |A - A^dagger|
    double min_eigenvalue = 0.0;   // of the Hermitian part
    double trace_error = 0.0;      // |tr A - 1|, real part only
    double trace_imag = 0.0;

    bool ok() const;
};

DensityDiagnostics diagnose_density(const CMatrix& m);

/// Hermitian, positive semidefinite, unit-trace operator on N two-level
/// systems. Basis index bit (N-1-d) holds the spin at detector d, so
/// detector 0 is most significant and down < up.
class DensityMatrix {
public:
    /// Throws Error(kNotPsd) for negative eigenvalues below -kPsdTolerance and
    /// Error(kInvalidInput) for shape, Hermiticity or trace violations.
    static DensityMatrix from_matrix(CMatrix m);

    static DensityMatrix pure(const CVector& psi);
    static DensityMatrix maximally_mixed(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }
    Complex operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }

private:
    DensityMatrix(CMatrix m, int num_qubits) : matrix_(std::move(m)), num_qubits_(num_qubits) {}

    CMatrix matrix_;
    int num_qubits_;
};

/// Label such as "ddu" for basis index 1 of a three-qubit space.
std::string basis_label(Eigen::Index index, int num_qubits);

/// Sum of |rho_ij| over i != j.
double offdiag_norm(const DensityMatrix& rho);

}  // namespace overlapq
