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

#include "overlapq/density_matrix.hpp"

#include <bit>
#include <sstream>

#include "overlapq/error.hpp"

namespace overlapq {

bool DensityDiagnostics::ok() const {
    return hermitian_error <= kHermitianTolerance && min_eigenvalue >= -kPsdTolerance &&
           trace_error <= kTraceTolerance && std::abs(trace_imag) <= kTraceTolerance;
}

DensityDiagnostics diagnose_density(const CMatrix& m) {
    DensityDiagnostics d;
    d.hermitian_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
    const CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues().minCoeff();
    const Complex tr = m.trace();
    d.trace_error = std::abs(tr.real() - 1.0);
    d.trace_imag = tr.imag();
    return d;
}

DensityMatrix DensityMatrix::from_matrix(CMatrix m) {
    if (m.rows() != m.cols() || m.rows() < 2 || !std::has_single_bit(static_cast<std::size_t>(m.rows()))) {
        throw Error(ErrorCode::kInvalidInput, "density matrix must be square with power-of-two dimension >= 2");
    }
    if (!m.allFinite()) {
        throw Error(ErrorCode::kInvalidInput, "density matrix has non-finite entries");
    }
    const DensityDiagnostics d = diagnose_density(m);
    std::ostringstream msg;
    msg.precision(6);
    if (d.hermitian_error > kHermitianTolerance) {
        msg << "density matrix is not Hermitian (max deviation " << d.hermitian_error << ")";
        throw Error(ErrorCode::kInvalidInput, msg.str());
    }
    if (d.min_eigenvalue < -kPsdTolerance) {
        msg << "density matrix is not positive semidefinite (min eigenvalue " << d.min_eigenvalue << ")";
        throw Error(ErrorCode::kNotPsd, msg.str());
    }
    if (d.trace_error > kTraceTolerance || std::abs(d.trace_imag) > kTraceTolerance) {
        msg << "density matrix trace deviates from 1 by " << d.trace_error;
        throw Error(ErrorCode::kInvalidInput, msg.str());
    }
    const int qubits = std::countr_zero(static_cast<std::size_t>(m.rows()));
    return DensityMatrix(std::move(m), qubits);
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) throw Error(ErrorCode::kInvalidInput, "pure state vector is zero");
    const CVector v = psi / norm;
    return from_matrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    return from_matrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

std::string basis_label(Eigen::Index index, int num_qubits) {
    std::string label(static_cast<std::size_t>(num_qubits), 'd');
    for (int d = 0; d < num_qubits; ++d) {
        if ((index >> (num_qubits - 1 - d)) & 1) label[d] = 'u';
    }
    return label;
}

double offdiag_norm(const DensityMatrix& rho) {
    const CMatrix& m = rho.matrix();
    return m.cwiseAbs().sum() - m.diagonal().cwiseAbs().sum();
}

}  // namespace overlapq
