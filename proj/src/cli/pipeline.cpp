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

#include "overlapq/cli/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <sstream>

namespace overlapq::cli {

using nlohmann::json;

namespace {

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double in_pi(double phi) { return phi / std::numbers::pi; }

const char* bool_text(bool b) { return b ? "true" : "false"; }

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    out << prefix << ',';
    if (j.is_string()) {
        out << j.get<std::string>();
    } else if (j.is_number_float()) {
        out << fmt_double(j.get<double>());
    } else if (!j.is_null()) {
        out << j.dump();
    }
    out << '\n';
}

}  // namespace

std::vector<Spin> initial_spins(const TransformSpec& spec) {
    std::vector<Spin> spins(spec.num_particles(), Spin::kDown);
    for (int k = 0; k < spec.num_particles(); ++k) {
        for (int j = 0; j < spec.num_modes(); ++j) {
            if (auto s = spec.spin(k, j)) {
                spins[k] = *s;
                break;
            }
        }
    }
    return spins;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
    const TransformSpec spec = build_spec(cfg);
    const GramMatrix gram = build_gram(cfg);
    const auto spins = initial_spins(spec);
    const ExpandedState expanded = apply_transform(initial_state(spins), spec);
    const PostselectedState ps = postselect_no_bunching(expanded);

    RunResult result{trace_distinguishability(ps, gram), std::nullopt, std::nullopt};
    const bool three = result.traced.rho.num_qubits() == 3;
    if (three) result.classification = classify(result.traced.rho, cfg.witness_margin);

    if (cfg.tomography) {
        const auto& t = *cfg.tomography;
        const auto settings =
            t.settings.empty() ? all_pauli_settings(result.traced.rho.num_qubits()) : t.settings;
        CountsTable counts = simulate_counts(result.traced.rho, settings, t.shots, t.seed);
        MleResult mle = reconstruct_mle(counts, t.mle);
        TomographyOutcome outcome{std::move(counts), std::move(mle), std::nullopt, 0.0};
        outcome.fidelity_to_source = fidelity_mixed(outcome.mle.rho, result.traced.rho);
        if (three) outcome.classification = classify(outcome.mle.rho, cfg.witness_margin);
        result.tomography = std::move(outcome);
    }
    return result;
}

ExperimentConfig with_parameter(const ExperimentConfig& cfg, const std::string& name, double value) {
    ExperimentConfig out = cfg;
    if (name == "g") {
        out.distinguishability = {};
        out.distinguishability.uniform_overlap = value;
        return out;
    }
    if (name.size() >= 2 && name[0] == 'L') {
        std::size_t index = 0;
        try {
            index = std::stoul(name.substr(1));
        } catch (const std::exception&) {
            throw ConfigError(ErrorCode::kInvalidInput, "param", "unknown scan parameter '" + name + "'");
        }
        if (!out.distinguishability.delays) {
            throw ConfigError(ErrorCode::kInvalidInput, "param",
                              "delay parameter '" + name + "' requires a delay-based distinguishability model");
        }
        auto& delays = out.distinguishability.delays->delays;
        if (index < 1 || index > delays.size()) {
            throw ConfigError(ErrorCode::kInvalidInput, "param", "delay index out of range in '" + name + "'");
        }
        delays[index - 1] = value;
        return out;
    }

    struct Pair {
        const char* name;
        Complex GhzParams::*self;
        Complex GhzParams::*partner;
    };
    static constexpr Pair kPairs[] = {
        {"alpha1", &GhzParams::alpha1, &GhzParams::alpha2}, {"alpha2", &GhzParams::alpha2, &GhzParams::alpha1},
        {"beta2", &GhzParams::beta2, &GhzParams::beta3},    {"beta3", &GhzParams::beta3, &GhzParams::beta2},
        {"gamma1", &GhzParams::gamma1, &GhzParams::gamma3}, {"gamma3", &GhzParams::gamma3, &GhzParams::gamma1},
    };
    for (const auto& p : kPairs) {
        if (name != p.name) continue;
        if (out.preset != Preset::kGhz) {
            throw ConfigError(ErrorCode::kInvalidInput, "param", "amplitude parameter '" + name + "' needs the ghz preset");
        }
        if (std::abs(value) > 1.0) {
            throw ConfigError(ErrorCode::kInvalidInput, "param", "amplitude value must lie in [-1, 1]");
        }
        const Complex old_partner = out.ghz.*p.partner;
        const Complex phase = old_partner == Complex{} ? Complex{1.0, 0.0} : old_partner / std::abs(old_partner);
        out.ghz.*p.self = value;
        out.ghz.*p.partner = phase * std::sqrt(std::max(0.0, 1.0 - value * value));
        return out;
    }
    throw ConfigError(ErrorCode::kInvalidInput, "param", "unknown scan parameter '" + name + "'");
}

std::vector<ScanRow> run_scan(const ExperimentConfig& cfg, const std::string& name, double from, double to,
                              int steps) {
    if (steps < 1) throw ConfigError(ErrorCode::kInvalidInput, "steps", "scan needs at least one step");
    if (!std::isfinite(from) || !std::isfinite(to)) {
        throw ConfigError(ErrorCode::kInvalidInput, "range", "scan range must be finite");
    }
    // Validate the parameter name before any work.
    (void)with_parameter(cfg, name, from);

    std::vector<ScanRow> rows;
    rows.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double value = steps == 1 ? from : from + (to - from) * i / (steps - 1);
        const ExperimentConfig point = with_parameter(cfg, name, value);
        ExperimentConfig checked = point;
        checked.tomography.reset();
        try {
            (void)build_spec(checked);
            (void)build_gram(checked);
        } catch (const Error& e) {
            throw ConfigError(e.code(), "param", name + " = " + fmt_double(value) + ": " + e.what());
        }
        const RunResult r = run_experiment(checked);
        rows.push_back({value, r.traced.p_success, r.classification});
    }
    return rows;
}

ReconstructionResult reconstruct_counts(const CountsTable& counts, const MleOptions& options) {
    MleResult mle = reconstruct_mle(counts, options);
    const double f_ghz = fidelity_pure(mle.rho, TargetState::ghz(mle.rho.num_qubits()));
    std::optional<ClassificationReport> c;
    if (mle.rho.num_qubits() == 3) c = classify(mle.rho);
    return {counts, std::move(mle), f_ghz, c};
}

std::string format_density_matrix(const CMatrix& m, int num_qubits) {
    std::ostringstream out;
    out << "# overlapq density matrix v1\n";
    out << "# qubits: " << num_qubits << "\n";
    out << "# dim: " << m.rows() << "\n";
    out << "# basis: detector-major (detector 0 most significant), down=0 < up=1\n";
    out << "# order:";
    for (Eigen::Index i = 0; i < m.rows(); ++i) out << ' ' << basis_label(i, num_qubits);
    out << "\n";
    for (int part = 0; part < 2; ++part) {
        out << (part == 0 ? "# real\n" : "# imag\n");
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                if (c) out << ',';
                out << fmt_double(part == 0 ? m(r, c).real() : m(r, c).imag());
            }
            out << '\n';
        }
    }
    return out.str();
}

CMatrix parse_density_matrix(std::istream& in) {
    std::vector<std::vector<double>> tables[2];
    int part = -1;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line == "# real") {
            part = 0;
            continue;
        }
        if (line == "# imag") {
            part = 1;
            continue;
        }
        if (line[0] == '#') continue;
        if (part < 0) throw Error(ErrorCode::kParse, "matrix file line " + std::to_string(line_no) + ": data before '# real'");
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw Error(ErrorCode::kParse, "matrix file line " + std::to_string(line_no) + ": bad number");
            }
        }
        tables[part].push_back(std::move(row));
    }
    const std::size_t dim = tables[0].size();
    if (dim == 0 || tables[1].size() != dim) throw Error(ErrorCode::kParse, "matrix file: real/imag tables missing or mismatched");
    CMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        if (tables[0][r].size() != dim || tables[1][r].size() != dim) {
            throw Error(ErrorCode::kParse, "matrix file: row " + std::to_string(r) + " has the wrong length");
        }
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = {tables[0][r][c], tables[1][r][c]};
    }
    return m;
}

json classification_json(const ClassificationReport& c) {
    return {{"fidelity_ghz", c.fidelity_ghz},
            {"fidelity_w_max", c.fidelity_w_max},
            {"phi1_pi", in_pi(c.phi1)},
            {"phi2_pi", in_pi(c.phi2)},
            {"ghz_witness_passed", c.ghz_witness_passed},
            {"w_witness_passed", c.w_witness_passed},
            {"offdiag_norm", c.offdiag_norm},
            {"verdict", verdict_name(c.verdict)}};
}

json run_report_json(const ExperimentConfig& cfg, const RunResult& result, const std::string& matrix_file,
                     const std::string& matrix_sha256) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["config_hash"] = config_hash(cfg);
    j["case"] = cfg.case_label;
    j["preset"] = preset_name(cfg.preset);
    j["num_particles"] = result.traced.rho.num_qubits();
    j["p_success"] = result.traced.p_success;
    j["density_matrix"] = {{"file", matrix_file}, {"sha256", matrix_sha256}};
    j["witness_margin"] = cfg.witness_margin;
    if (result.classification) {
        j.update(classification_json(*result.classification));
    } else {
        j["fidelity_ghz"] = fidelity_pure(result.traced.rho, TargetState::ghz(result.traced.rho.num_qubits()));
    }
    if (result.tomography) {
        const auto& t = *result.tomography;
        json tj = {{"shots", t.counts.shots_per_setting},
                   {"seed", t.counts.seed.value_or(0)},
                   {"mle_iterations", t.mle.iterations},
                   {"mle_converged", t.mle.converged},
                   {"fidelity_to_source", t.fidelity_to_source}};
        if (t.classification) tj.update(classification_json(*t.classification));
        j["tomography"] = std::move(tj);
    }
    return j;
}

json reconstruct_report_json(const ReconstructionResult& r, const std::string& counts_file,
                             const std::string& matrix_file, const std::string& matrix_sha256) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["counts_file"] = counts_file;
    j["num_qubits"] = r.counts.num_qubits;
    j["shots_per_setting"] = r.counts.shots_per_setting;
    j["mle_iterations"] = r.mle.iterations;
    j["mle_converged"] = r.mle.converged;
    j["log_likelihood"] = r.mle.log_likelihood.back();
    j["density_matrix"] = {{"file", matrix_file}, {"sha256", matrix_sha256}};
    j["fidelity_ghz"] = r.fidelity_ghz;
    if (r.classification) j.update(classification_json(*r.classification));
    return j;
}

std::string report_csv(const json& report) {
    std::ostringstream out;
    out << "key,value\n";
    flatten(report, "", out);
    return out.str();
}

std::string scan_csv(const std::string& name, const std::vector<ScanRow>& rows) {
    std::ostringstream out;
    out << name << ",p_success,fidelity_ghz,fidelity_w_max,phi1_pi,phi2_pi,ghz_witness_passed,w_witness_passed\n";
    for (const auto& r : rows) {
        out << fmt_double(r.value) << ',' << fmt_double(r.p_success);
        if (r.classification) {
            const auto& c = *r.classification;
            out << ',' << fmt_double(c.fidelity_ghz) << ',' << fmt_double(c.fidelity_w_max) << ','
                << fmt_double(in_pi(c.phi1)) << ',' << fmt_double(in_pi(c.phi2)) << ',' << bool_text(c.ghz_witness_passed)
                << ',' << bool_text(c.w_witness_passed);
        } else {
            out << ",,,,,,";
        }
        out << '\n';
    }
    return out.str();
}

json scan_json(const std::string& name, const std::vector<ScanRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json row = {{name, r.value}, {"p_success", r.p_success}};
        if (r.classification) row.update(classification_json(*r.classification));
        arr.push_back(std::move(row));
    }
    return {{"parameter", name}, {"rows", std::move(arr)}};
}

}  // namespace overlapq::cli
