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

#include "overlapq/entanglement.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "overlapq/error.hpp"

namespace overlapq {

namespace {

// Basis indices of |ddu>, |dud>, |udd>.
constexpr std::array<Eigen::Index, 3> kSingleUp = {1, 2, 4};

CMatrix psd_sqrt(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    // Eigenvalues below the solver's resolution are treated as exact zeros.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * solver.eigenvalues().cwiseAbs().maxCoeff();
    const Eigen::VectorXd roots =
        solver.eigenvalues().unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

void require_three_qubits(const DensityMatrix& rho, const char* what) {
    if (rho.num_qubits() != 3) {
        throw Error(ErrorCode::kUnsupportedConfiguration, std::string(what) + " requires a three-qubit state");
    }
}

}  // namespace

TargetState TargetState::ghz(int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    CVector v = CVector::Zero(dim);
    v(0) = 1.0 / std::numbers::sqrt2;
    v(dim - 1) = 1.0 / std::numbers::sqrt2;
    return {Kind::kGhz, 0.0, 0.0, std::move(v)};
}

TargetState TargetState::w(double phi1, double phi2) {
    const double s = 1.0 / std::sqrt(3.0);
    CVector v = CVector::Zero(8);
    v(kSingleUp[0]) = s;
    v(kSingleUp[1]) = std::polar(s, phi1);
    v(kSingleUp[2]) = std::polar(s, phi2);
    return {Kind::kW, phi1, phi2, std::move(v)};
}

double fidelity_pure(const DensityMatrix& rho, const TargetState& target) {
    if (target.vector.size() != rho.dim()) {
        throw Error(ErrorCode::kInvalidInput, "target state dimension does not match density matrix");
    }
    const Complex f = target.vector.dot(rho.matrix() * target.vector);
    return std::clamp(f.real(), 0.0, 1.0);
}

double fidelity_mixed(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw Error(ErrorCode::kInvalidInput, "density matrices have different dimensions");
    }
    // Nuclear norm of sqrt(rho) sqrt(sigma). Singular values near zero stay
    // at round-off size, unlike square roots of eigenvalues.
    const CMatrix product = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
    Eigen::JacobiSVD<CMatrix> svd(product);
    const double t = svd.singularValues().sum();
    return std::clamp(t * t, 0.0, 1.0);
}

double w_phase_objective(const DensityMatrix& rho, double phi1, double phi2) {
    require_three_qubits(rho, "W phase objective");
    const std::array<Complex, 3> c = {Complex{1.0, 0.0}, std::polar(1.0, phi1), std::polar(1.0, phi2)};
    Complex f{};
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            f += std::conj(c[a]) * rho(kSingleUp[a], kSingleUp[b]) * c[b];
        }
    }
    return std::clamp(f.real() / 3.0, 0.0, 1.0);
}

double wrap_angle(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phi + std::numbers::pi, two_pi);
    if (w < 0.0) w += two_pi;
    return w - std::numbers::pi;
}

PhaseOptimum optimize_w_phases(const DensityMatrix& rho) {
    require_three_qubits(rho, "W phase optimization");
    const double step = 2.0 * std::numbers::pi / kPhaseGridSize;

    double best_phi1 = 0.0;
    double best_phi2 = 0.0;
    double best = w_phase_objective(rho, 0.0, 0.0);
    for (int i = 0; i < kPhaseGridSize; ++i) {
        for (int j = 0; j < kPhaseGridSize; ++j) {
            const double f = w_phase_objective(rho, i * step, j * step);
            if (f > best) {
                best = f;
                best_phi1 = i * step;
                best_phi2 = j * step;
            }
        }
    }

    // Coordinate descent from the best grid point.
    double h = step;
    while (h >= kPhaseRefineStep) {
        bool moved = false;
        const std::array<std::pair<double, double>, 4> moves = {
            std::pair{h, 0.0}, std::pair{-h, 0.0}, std::pair{0.0, h}, std::pair{0.0, -h}};
        for (auto [d1, d2] : moves) {
            const double f = w_phase_objective(rho, best_phi1 + d1, best_phi2 + d2);
            if (f > best) {
                best = f;
                best_phi1 += d1;
                best_phi2 += d2;
                moved = true;
            }
        }
        if (!moved) h *= 0.5;
    }
    return {wrap_angle(best_phi1), wrap_angle(best_phi2), best};
}

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::kGenuineGhzWitnessed: return "genuine-GHZ-witnessed";
        case Verdict::kGenuineWWitnessed: return "genuine-W-witnessed";
        case Verdict::kWitnessInconclusive: return "witness-inconclusive";
    }
    return "unknown";
}

ClassificationReport classify(const DensityMatrix& rho, double margin) {
    require_three_qubits(rho, "classification");
    ClassificationReport r{};
    r.fidelity_ghz = fidelity_pure(rho, TargetState::ghz(3));
    const PhaseOptimum w = optimize_w_phases(rho);
    r.fidelity_w_max = w.fidelity;
    r.phi1 = w.phi1;
    r.phi2 = w.phi2;
    r.offdiag_norm = offdiag_norm(rho);

    const double ghz_excess = r.fidelity_ghz - (kGhzWitnessBound + margin);
    const double w_excess = r.fidelity_w_max - (kWWitnessBound + margin);
    r.ghz_witness_passed = ghz_excess > kWitnessRoundoff;
    r.w_witness_passed = w_excess > kWitnessRoundoff;
    if (r.ghz_witness_passed && (!r.w_witness_passed || ghz_excess >= w_excess)) {
        r.verdict = Verdict::kGenuineGhzWitnessed;
    } else if (r.w_witness_passed) {
        r.verdict = Verdict::kGenuineWWitnessed;
    } else {
        r.verdict = Verdict::kWitnessInconclusive;
    }
    return r;
}

}  // namespace overlapq
