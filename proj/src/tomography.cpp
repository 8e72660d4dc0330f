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

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "overlapq/error.hpp"

namespace overlapq {

namespace {

using Eigenvector = std::array<Complex, 2>;

Eigenvector axis_eigenvector(PauliAxis axis, int bit) {
    const double h = 1.0 / std::numbers::sqrt2;
    const double sign = bit == 0 ? 1.0 : -1.0;
    switch (axis) {
        case PauliAxis::kX: return {Complex{h, 0.0}, Complex{sign * h, 0.0}};
        case PauliAxis::kY: return {Complex{h, 0.0}, Complex{0.0, sign * h}};
        case PauliAxis::kZ: break;
    }
    return bit == 0 ? Eigenvector{Complex{1.0, 0.0}, Complex{}} : Eigenvector{Complex{}, Complex{1.0, 0.0}};
}

int bit_of(std::uint32_t value, int qubit, int num_qubits) {
    return static_cast<int>((value >> (num_qubits - 1 - qubit)) & 1U);
}

/// Product eigenvector of the setting's observables for one outcome.
CVector outcome_vector(const MeasurementSetting& setting, std::uint32_t outcome) {
    const int n = static_cast<int>(setting.bases.size());
    const Eigen::Index dim = Eigen::Index{1} << n;
    std::vector<Eigenvector> factors;
    factors.reserve(n);
    for (int q = 0; q < n; ++q) factors.push_back(axis_eigenvector(setting.bases[q], bit_of(outcome, q, n)));
    CVector v(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        Complex a{1.0, 0.0};
        for (int q = 0; q < n; ++q) a *= factors[q][bit_of(static_cast<std::uint32_t>(idx), q, n)];
        v(idx) = a;
    }
    return v;
}

/// Relative frequencies grouped by setting.
std::map<MeasurementSetting, std::vector<double>> frequencies_by_setting(const CountsTable& counts) {
    counts.validate();
    const std::size_t dim = std::size_t{1} << counts.num_qubits;
    std::map<MeasurementSetting, std::vector<double>> out;
    for (const auto& row : counts.rows) {
        auto [it, inserted] = out.try_emplace(row.setting, dim, 0.0);
        it->second[row.outcome] += static_cast<double>(row.count) / static_cast<double>(counts.shots_per_setting);
    }
    return out;
}

using PauliString = std::vector<int>;  // 0 = I, 1 = X, 2 = Y, 3 = Z

PauliAxis axis_of(int p) { return p == 1 ? PauliAxis::kX : (p == 2 ? PauliAxis::kY : PauliAxis::kZ); }

CMatrix pauli_matrix(int p) {
    CMatrix m = CMatrix::Zero(2, 2);
    const Complex i{0.0, 1.0};
    switch (p) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -i, i, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

void require_complete(const std::map<MeasurementSetting, std::vector<double>>& freqs, int n) {
    // A Pauli string without identity factors is only measured by its own
    // setting, so completeness needs all 3^N settings.
    for (const auto& s : all_pauli_settings(n)) {
        if (!freqs.contains(s)) {
            throw Error(ErrorCode::kIncompleteSettings,
                        "measurement settings are not informationally complete (missing " + s.to_string() + ")");
        }
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    std::ostringstream msg;
    msg << "counts file line " << line << ": " << what;
    throw Error(ErrorCode::kParse, msg.str());
}

template <typename T>
bool parse_uint(std::string_view text, T& value) {
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

std::string MeasurementSetting::to_string() const {
    std::string s;
    for (PauliAxis a : bases) s += a == PauliAxis::kX ? 'X' : (a == PauliAxis::kY ? 'Y' : 'Z');
    return s;
}

MeasurementSetting MeasurementSetting::parse(std::string_view text) {
    MeasurementSetting s;
    if (text.empty()) throw Error(ErrorCode::kParse, "empty measurement setting");
    for (char c : text) {
        switch (c) {
            case 'X': s.bases.push_back(PauliAxis::kX); break;
            case 'Y': s.bases.push_back(PauliAxis::kY); break;
            case 'Z': s.bases.push_back(PauliAxis::kZ); break;
            default: throw Error(ErrorCode::kParse, "invalid measurement setting '" + std::string(text) + "'");
        }
    }
    return s;
}

std::vector<MeasurementSetting> all_pauli_settings(int num_qubits) {
    std::vector<MeasurementSetting> out;
    std::size_t total = 1;
    for (int q = 0; q < num_qubits; ++q) total *= 3;
    out.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
        MeasurementSetting s;
        s.bases.resize(num_qubits);
        std::size_t rest = k;
        for (int q = num_qubits - 1; q >= 0; --q) {
            s.bases[q] = static_cast<PauliAxis>(rest % 3);
            rest /= 3;
        }
        out.push_back(std::move(s));
    }
    return out;
}

void CountsTable::validate() const {
    if (num_qubits < 1 || num_qubits > 16) throw Error(ErrorCode::kInvalidInput, "counts table qubit count out of range");
    if (shots_per_setting < 1) throw Error(ErrorCode::kInvalidInput, "shots per setting must be positive");
    const std::uint32_t dim = 1U << num_qubits;
    std::map<MeasurementSetting, std::uint64_t> sums;
    for (const auto& row : rows) {
        if (static_cast<int>(row.setting.bases.size()) != num_qubits) {
            throw Error(ErrorCode::kInvalidInput, "setting " + row.setting.to_string() + " has the wrong length");
        }
        if (row.outcome >= dim) throw Error(ErrorCode::kInvalidInput, "outcome index out of range");
        sums[row.setting] += row.count;
    }
    for (const auto& [setting, sum] : sums) {
        if (sum != shots_per_setting) {
            std::ostringstream msg;
            msg << "counts for setting " << setting.to_string() << " sum to " << sum << ", expected "
                << shots_per_setting;
            throw Error(ErrorCode::kInvalidInput, msg.str());
        }
    }
}

std::vector<double> outcome_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting) {
    if (static_cast<int>(setting.bases.size()) != rho.num_qubits()) {
        throw Error(ErrorCode::kInvalidInput, "setting length does not match the number of qubits");
    }
    const std::uint32_t dim = 1U << rho.num_qubits();
    std::vector<double> p(dim);
    for (std::uint32_t o = 0; o < dim; ++o) {
        const CVector v = outcome_vector(setting, o);
        p[o] = std::max(0.0, v.dot(rho.matrix() * v).real());
    }
    return p;
}

CountsTable simulate_counts(const DensityMatrix& rho, std::span<const MeasurementSetting> settings,
                            std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw Error(ErrorCode::kInvalidInput, "shots must be positive");
    CountsTable table;
    table.num_qubits = rho.num_qubits();
    table.shots_per_setting = shots;
    table.seed = seed;
    for (std::size_t k = 0; k < settings.size(); ++k) {
        const auto probs = outcome_probabilities(rho, settings[k]);
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(k)};
        std::mt19937_64 rng(seq);

        double mass = 0.0;
        for (double p : probs) mass += p;
        std::uint64_t remaining = shots;
        for (std::uint32_t o = 0; o < probs.size(); ++o) {
            std::uint64_t c = 0;
            if (o + 1 == probs.size()) {
                c = remaining;
            } else if (remaining > 0 && mass > 0.0) {
                const double q = std::clamp(probs[o] / mass, 0.0, 1.0);
                std::binomial_distribution<std::uint64_t> draw(remaining, q);
                c = draw(rng);
            }
            remaining -= c;
            mass -= probs[o];
            table.rows.push_back({settings[k], o, c});
        }
    }
    return table;
}

CMatrix reconstruct_linear(const CountsTable& counts) {
    const auto freqs = frequencies_by_setting(counts);
    const int n = counts.num_qubits;
    require_complete(freqs, n);

    const Eigen::Index dim = Eigen::Index{1} << n;
    CMatrix rho = CMatrix::Zero(dim, dim);
    std::size_t strings = 1;
    for (int q = 0; q < n; ++q) strings *= 4;

    PauliString p(n);
    for (std::size_t k = 0; k < strings; ++k) {
        std::size_t rest = k;
        for (int q = n - 1; q >= 0; --q) {
            p[q] = static_cast<int>(rest % 4);
            rest /= 4;
        }
        double sum = 0.0;
        int compatible = 0;
        for (const auto& [setting, f] : freqs) {
            bool ok = true;
            for (int q = 0; q < n && ok; ++q) ok = p[q] == 0 || setting.bases[q] == axis_of(p[q]);
            if (!ok) continue;
            ++compatible;
            for (std::uint32_t o = 0; o < f.size(); ++o) {
                int parity = 0;
                for (int q = 0; q < n; ++q) {
                    if (p[q] != 0) parity ^= bit_of(o, q, n);
                }
                sum += parity ? -f[o] : f[o];
            }
        }
        const double expectation = sum / compatible;
        CMatrix op = pauli_matrix(p[0]);
        for (int q = 1; q < n; ++q) op = kron(op, pauli_matrix(p[q]));
        rho += expectation * op;
    }
    rho /= static_cast<double>(dim);
    return rho;
}

MleResult reconstruct_mle(const CountsTable& counts, const MleOptions& options) {
    const auto freqs = frequencies_by_setting(counts);
    const int n = counts.num_qubits;
    require_complete(freqs, n);
    if (!(options.dilution > 0.0)) throw Error(ErrorCode::kInvalidInput, "dilution must be positive");

    // Projectors with nonzero observed frequency.
    struct Observed {
        CVector v;
        double weight;
    };
    std::vector<Observed> observed;
    const double per_setting = 1.0 / static_cast<double>(freqs.size());
    for (const auto& [setting, f] : freqs) {
        for (std::uint32_t o = 0; o < f.size(); ++o) {
            if (f[o] > 0.0) observed.push_back({outcome_vector(setting, o), f[o] * per_setting});
        }
    }

    const Eigen::Index dim = Eigen::Index{1} << n;
    const CMatrix id = CMatrix::Identity(dim, dim);

    auto log_likelihood = [&](const CMatrix& rho, std::vector<double>* probs) {
        double ll = 0.0;
        for (std::size_t k = 0; k < observed.size(); ++k) {
            const double p = std::max(observed[k].v.dot(rho * observed[k].v).real(), 1e-300);
            if (probs) (*probs)[k] = p;
            ll += observed[k].weight * std::log(p);
        }
        return ll;
    };

    CMatrix rho = id / static_cast<double>(dim);
    std::vector<double> probs(observed.size());
    double ll = log_likelihood(rho, &probs);

    MleResult result{DensityMatrix::maximally_mixed(n), 0, false, {ll}};
    double eps = options.dilution;
    constexpr double kMaxDilution = 1e3;
    constexpr double kMinDilution = 1e-12;

    while (result.iterations < options.max_iters) {
        CMatrix r = CMatrix::Zero(dim, dim);
        for (std::size_t k = 0; k < observed.size(); ++k) {
            r.noalias() += (observed[k].weight / probs[k]) * (observed[k].v * observed[k].v.adjoint());
        }

        bool first_try = true;
        bool accepted = false;
        CMatrix next;
        double next_ll = ll;
        std::vector<double> next_probs(observed.size());
        while (eps >= kMinDilution) {
            const CMatrix a = id + eps * r;
            next = a * rho * a.adjoint();
            next = 0.5 * (next + next.adjoint()).eval();
            next /= next.trace().real();
            next_ll = log_likelihood(next, &next_probs);
            if (next_ll >= ll) {
                accepted = true;
                break;
            }
            eps *= 0.5;
            first_try = false;
        }
        ++result.iterations;
        if (!accepted) {
            result.converged = true;
            break;
        }
        const double gain = next_ll - ll;
        rho = std::move(next);
        ll = next_ll;
        probs.swap(next_probs);
        result.log_likelihood.push_back(ll);
        if (first_try) {
            if (gain < options.tol) {
                result.converged = true;
                break;
            }
            eps = std::min(eps * 1.5, kMaxDilution);
        }
    }
    result.rho = DensityMatrix::from_matrix(std::move(rho));
    return result;
}

void write_counts(std::ostream& out, const CountsTable& counts) {
    out << "# overlapq counts v1\n";
    out << "# qubits: " << counts.num_qubits << "\n";
    out << "# shots: " << counts.shots_per_setting << "\n";
    if (counts.seed) out << "# seed: " << *counts.seed << "\n";
    out << "# rows: " << counts.rows.size() << "\n";
    out << "setting,outcome,count\n";
    for (const auto& row : counts.rows) {
        std::string bits(static_cast<std::size_t>(counts.num_qubits), '0');
        for (int q = 0; q < counts.num_qubits; ++q) {
            if (bit_of(row.outcome, q, counts.num_qubits)) bits[q] = '1';
        }
        out << row.setting.to_string() << ',' << bits << ',' << row.count << '\n';
    }
}

CountsTable read_counts(std::istream& in) {
    CountsTable table;
    bool have_qubits = false;
    bool have_shots = false;
    bool have_header = false;
    std::optional<std::size_t> expected_rows;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto colon = line.find(':');
            if (colon == std::string_view::npos) continue;
            const auto key = trim(line.substr(1, colon - 1));
            const auto value = trim(line.substr(colon + 1));
            if (key == "qubits") {
                if (!parse_uint(value, table.num_qubits) || table.num_qubits < 1 || table.num_qubits > 16) {
                    parse_fail(line_no, "invalid qubit count");
                }
                have_qubits = true;
            } else if (key == "shots") {
                if (!parse_uint(value, table.shots_per_setting) || table.shots_per_setting < 1) {
                    parse_fail(line_no, "invalid shot count");
                }
                have_shots = true;
            } else if (key == "seed") {
                std::uint64_t seed = 0;
                if (!parse_uint(value, seed)) parse_fail(line_no, "invalid seed");
                table.seed = seed;
            } else if (key == "rows") {
                std::size_t rows = 0;
                if (!parse_uint(value, rows)) parse_fail(line_no, "invalid row count");
                expected_rows = rows;
            }
            continue;
        }
        if (!have_header) {
            if (line != "setting,outcome,count") parse_fail(line_no, "expected column header 'setting,outcome,count'");
            if (!have_qubits || !have_shots) parse_fail(line_no, "missing '# qubits:' or '# shots:' header");
            have_header = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos) parse_fail(line_no, "expected three comma-separated fields");
        const auto setting_text = trim(line.substr(0, c1));
        const auto outcome_text = trim(line.substr(c1 + 1, c2 - c1 - 1));
        const auto count_text = trim(line.substr(c2 + 1));

        CountsRow row;
        try {
            row.setting = MeasurementSetting::parse(setting_text);
        } catch (const Error& e) {
            parse_fail(line_no, e.what());
        }
        if (static_cast<int>(row.setting.bases.size()) != table.num_qubits) {
            parse_fail(line_no, "setting length does not match qubit count");
        }
        if (static_cast<int>(outcome_text.size()) != table.num_qubits) {
            parse_fail(line_no, "outcome length does not match qubit count");
        }
        for (char c : outcome_text) {
            if (c != '0' && c != '1') parse_fail(line_no, "outcome must be a bit string");
            row.outcome = (row.outcome << 1) | static_cast<std::uint32_t>(c - '0');
        }
        if (!parse_uint(count_text, row.count)) parse_fail(line_no, "count must be a nonnegative integer");
        table.rows.push_back(std::move(row));
    }
    if (!have_header) parse_fail(line_no, "missing column header (file truncated?)");
    if (expected_rows && *expected_rows != table.rows.size()) {
        parse_fail(line_no, "expected " + std::to_string(*expected_rows) + " rows, found " +
                                std::to_string(table.rows.size()) + " (file truncated?)");
    }
    try {
        table.validate();
    } catch (const Error& e) {
        parse_fail(line_no, std::string(e.what()) + " (file truncated?)");
    }
    return table;
}

}  // namespace overlapq
