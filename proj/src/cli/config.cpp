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

#include "overlapq/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace overlapq::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message,
                       ErrorCode code = ErrorCode::kInvalidInput) {
    throw ConfigError(code, field, message);
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
    if (!obj.is_object()) fail(prefix.empty() ? "<root>" : prefix, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) fail(prefix.empty() ? key : prefix + "." + key, "unknown field");
    }
}

double parse_real(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(field, "expected a finite number");
    return x;
}

std::uint64_t parse_count(const json& v, const std::string& field) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail(field, "expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

Complex parse_complex(const json& v, const std::string& field) {
    if (v.is_number()) return {parse_real(v, field), 0.0};
    if (v.is_array() && v.size() == 2) return {parse_real(v[0], field + "[0]"), parse_real(v[1], field + "[1]")};
    if (v.is_object()) {
        check_keys(v, {"re", "im"}, field);
        const double re = v.contains("re") ? parse_real(v["re"], field + ".re") : 0.0;
        const double im = v.contains("im") ? parse_real(v["im"], field + ".im") : 0.0;
        return {re, im};
    }
    fail(field, "expected a complex number (number, [re, im] or {\"re\", \"im\"})");
}

CMatrix parse_cmatrix(const json& v, const std::string& field) {
    if (!v.is_array() || v.empty()) fail(field, "expected a non-empty array of rows");
    const std::size_t rows = v.size();
    if (!v[0].is_array() || v[0].empty()) fail(field + "[0]", "expected a non-empty row");
    const std::size_t cols = v[0].size();
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_field = field + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != cols) fail(row_field, "rows must all have the same length");
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = parse_complex(v[i][j], row_field + "[" + std::to_string(j) + "]");
        }
    }
    return m;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json cmatrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

void parse_ghz(const json& v, ExperimentConfig& cfg) {
    check_keys(v, {"alpha1", "alpha2", "beta2", "beta3", "gamma1", "gamma3"}, "ghz");
    auto get = [&](const char* name, Complex& out) {
        if (v.contains(name)) out = parse_complex(v[name], std::string("ghz.") + name);
    };
    get("alpha1", cfg.ghz.alpha1);
    get("alpha2", cfg.ghz.alpha2);
    get("beta2", cfg.ghz.beta2);
    get("beta3", cfg.ghz.beta3);
    get("gamma1", cfg.ghz.gamma1);
    get("gamma3", cfg.ghz.gamma3);
}

void parse_w(const json& v, ExperimentConfig& cfg) {
    check_keys(v, {"tritter", "rows"}, "w");
    if (v.contains("tritter") == v.contains("rows")) fail("w", "give exactly one of 'tritter' or 'rows'");
    if (v.contains("tritter")) {
        const auto& t = v["tritter"];
        if (t == "balanced") {
            cfg.w_rows = balanced_tritter_rows();
        } else if (t == "dft") {
            cfg.w_rows = dft_tritter_rows();
        } else {
            fail("w.tritter", "expected 'balanced' or 'dft'");
        }
        return;
    }
    const CMatrix m = parse_cmatrix(v["rows"], "w.rows");
    if (m.rows() != 3 || m.cols() != 3) fail("w.rows", "W preset needs a 3x3 amplitude matrix");
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) cfg.w_rows[i][j] = m(i, j);
    }
}

void parse_custom(const json& v, ExperimentConfig& cfg) {
    check_keys(v, {"T", "S"}, "custom");
    if (!v.contains("T") || !v.contains("S")) fail("custom", "custom preset needs both 'T' and 'S'");
    cfg.custom_t = parse_cmatrix(v["T"], "custom.T");
    const auto& s = v["S"];
    if (!s.is_array()) fail("custom.S", "expected an array of rows");
    cfg.custom_s.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string row_field = "custom.S[" + std::to_string(i) + "]";
        if (!s[i].is_array()) fail(row_field, "expected an array");
        std::vector<SpinSlot> row;
        for (std::size_t j = 0; j < s[i].size(); ++j) {
            const std::string f = row_field + "[" + std::to_string(j) + "]";
            if (!s[i][j].is_string()) fail(f, "expected \"down\", \"up\" or \"unused\"");
            const auto text = s[i][j].get<std::string>();
            if (text == "unused" || text == "0") {
                row.emplace_back();
            } else if (auto spin = parse_spin(text)) {
                row.emplace_back(*spin);
            } else {
                fail(f, "expected \"down\", \"up\" or \"unused\"");
            }
        }
        cfg.custom_s.push_back(std::move(row));
    }
}

void parse_distinguishability(const json& v, ExperimentConfig& cfg) {
    check_keys(v, {"gram", "delays", "coherence_length", "uniform_overlap"}, "distinguishability");
    const int forms = static_cast<int>(v.contains("gram")) + static_cast<int>(v.contains("delays")) +
                      static_cast<int>(v.contains("uniform_overlap"));
    if (forms != 1) {
        fail("distinguishability", "give exactly one of 'gram', 'delays' or 'uniform_overlap'");
    }
    auto& d = cfg.distinguishability;
    d = {};
    if (v.contains("gram")) {
        if (v.contains("coherence_length")) fail("distinguishability.coherence_length", "only valid with 'delays'");
        d.gram = parse_cmatrix(v["gram"], "distinguishability.gram");
    } else if (v.contains("delays")) {
        DelayModel model;
        const auto& delays = v["delays"];
        if (!delays.is_array() || delays.empty()) fail("distinguishability.delays", "expected a non-empty array");
        for (std::size_t i = 0; i < delays.size(); ++i) {
            model.delays.push_back(parse_real(delays[i], "distinguishability.delays[" + std::to_string(i) + "]"));
        }
        if (!v.contains("coherence_length")) fail("distinguishability.coherence_length", "required with 'delays'");
        model.coherence_length = parse_real(v["coherence_length"], "distinguishability.coherence_length");
        d.delays = std::move(model);
    } else {
        if (v.contains("coherence_length")) fail("distinguishability.coherence_length", "only valid with 'delays'");
        d.uniform_overlap = parse_real(v["uniform_overlap"], "distinguishability.uniform_overlap");
    }
}

void parse_tomography(const json& v, ExperimentConfig& cfg) {
    check_keys(v, {"shots", "seed", "settings", "max_iters", "tol", "dilution"}, "tomography");
    TomographyConfig t;
    if (v.contains("shots")) t.shots = parse_count(v["shots"], "tomography.shots");
    if (t.shots < 1) fail("tomography.shots", "must be at least 1");
    if (v.contains("seed")) t.seed = parse_count(v["seed"], "tomography.seed");
    if (v.contains("settings")) {
        const auto& s = v["settings"];
        if (!s.is_array()) fail("tomography.settings", "expected an array of setting strings");
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::string f = "tomography.settings[" + std::to_string(i) + "]";
            if (!s[i].is_string()) fail(f, "expected a string such as \"XYZ\"");
            try {
                t.settings.push_back(MeasurementSetting::parse(s[i].get<std::string>()));
            } catch (const Error& e) {
                fail(f, e.what());
            }
        }
    }
    if (v.contains("max_iters")) {
        const auto iters = parse_count(v["max_iters"], "tomography.max_iters");
        if (iters < 1 || iters > 10'000'000) fail("tomography.max_iters", "out of range");
        t.mle.max_iters = static_cast<int>(iters);
    }
    if (v.contains("tol")) t.mle.tol = parse_real(v["tol"], "tomography.tol");
    if (v.contains("dilution")) {
        t.mle.dilution = parse_real(v["dilution"], "tomography.dilution");
        if (!(t.mle.dilution > 0.0)) fail("tomography.dilution", "must be positive");
    }
    cfg.tomography = std::move(t);
}

void parse_output(const json& v, ExperimentConfig& cfg) {
    check_keys(v, {"matrix_file", "report_file", "counts_file", "mle_matrix_file"}, "output");
    auto get = [&](const char* name, std::string& out) {
        if (!v.contains(name)) return;
        if (!v[name].is_string() || v[name].get<std::string>().empty()) {
            fail(std::string("output.") + name, "expected a non-empty file name");
        }
        out = v[name].get<std::string>();
    };
    get("matrix_file", cfg.output.matrix_file);
    get("report_file", cfg.output.report_file);
    get("counts_file", cfg.output.counts_file);
    get("mle_matrix_file", cfg.output.mle_matrix_file);
}

}  // namespace

std::string_view preset_name(Preset p) {
    switch (p) {
        case Preset::kGhz: return "ghz";
        case Preset::kW: return "w";
        case Preset::kCustom: return "custom";
    }
    return "unknown";
}

TransformSpec build_spec(const ExperimentConfig& cfg) {
    switch (cfg.preset) {
        case Preset::kGhz: return ghz_preset(cfg.ghz);
        case Preset::kW: return w_preset(cfg.w_rows);
        case Preset::kCustom: break;
    }
    return custom_spec(cfg.custom_t, cfg.custom_s);
}

GramMatrix build_gram(const ExperimentConfig& cfg) {
    const auto& d = cfg.distinguishability;
    if (d.gram) return GramMatrix::create(*d.gram);
    if (d.delays) return gram_from_delays(*d.delays);
    const int n = build_spec(cfg).num_particles();
    return GramMatrix::uniform(n, d.uniform_overlap.value_or(1.0));
}

ExperimentConfig parse_config(const json& doc) {
    check_keys(doc, {"preset", "ghz", "w", "custom", "distinguishability", "case", "witness_margin", "tomography",
                     "output"},
               "");
    ExperimentConfig cfg;
    if (!doc.contains("preset") || !doc["preset"].is_string()) fail("preset", "required: \"ghz\", \"w\" or \"custom\"");
    const auto preset = doc["preset"].get<std::string>();
    if (preset == "ghz") {
        cfg.preset = Preset::kGhz;
    } else if (preset == "w") {
        cfg.preset = Preset::kW;
    } else if (preset == "custom") {
        cfg.preset = Preset::kCustom;
    } else {
        fail("preset", "expected \"ghz\", \"w\" or \"custom\"");
    }
    for (const char* section : {"ghz", "w", "custom"}) {
        if (doc.contains(section) && preset != section) {
            fail(section, "section does not match preset '" + preset + "'");
        }
    }
    if (doc.contains("ghz")) parse_ghz(doc["ghz"], cfg);
    if (doc.contains("w")) parse_w(doc["w"], cfg);
    if (cfg.preset == Preset::kCustom) {
        if (!doc.contains("custom")) fail("custom", "required for the custom preset");
        parse_custom(doc["custom"], cfg);
    }
    if (!doc.contains("distinguishability")) {
        fail("distinguishability", "required: one of 'gram', 'delays' or 'uniform_overlap'");
    }
    parse_distinguishability(doc["distinguishability"], cfg);
    if (doc.contains("case")) {
        if (!doc["case"].is_string()) fail("case", "expected a string");
        cfg.case_label = doc["case"].get<std::string>();
    }
    if (doc.contains("witness_margin")) cfg.witness_margin = parse_real(doc["witness_margin"], "witness_margin");
    if (doc.contains("tomography")) parse_tomography(doc["tomography"], cfg);
    if (doc.contains("output")) parse_output(doc["output"], cfg);

    // Owning-module invariants.
    const char* spec_field = cfg.preset == Preset::kGhz ? "ghz" : (cfg.preset == Preset::kW ? "w" : "custom");
    int n = 0;
    try {
        n = build_spec(cfg).num_particles();
    } catch (const Error& e) {
        fail(spec_field, e.what(), e.code());
    }
    const auto& d = cfg.distinguishability;
    const std::string gram_field = d.gram ? "distinguishability.gram"
                                   : d.delays ? "distinguishability.delays"
                                              : "distinguishability.uniform_overlap";
    try {
        const GramMatrix g = build_gram(cfg);
        if (g.size() != n) {
            fail(gram_field, "describes " + std::to_string(g.size()) + " particles but the transformation has " +
                                 std::to_string(n));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(gram_field, e.what(), e.code());
    }
    if (cfg.tomography) {
        for (std::size_t i = 0; i < cfg.tomography->settings.size(); ++i) {
            if (static_cast<int>(cfg.tomography->settings[i].bases.size()) != n) {
                fail("tomography.settings[" + std::to_string(i) + "]", "setting length does not match particle count");
            }
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(ErrorCode::kInvalidInput, "<file>", "cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(ErrorCode::kParse, "<syntax>", e.what());
    }
    return parse_config(doc);
}

json canonical_json(const ExperimentConfig& cfg) {
    json j;
    j["preset"] = preset_name(cfg.preset);
    const TransformSpec spec = build_spec(cfg);
    j["T"] = cmatrix_json(spec.amplitudes());
    json s = json::array();
    for (const auto& row : spec.spins()) {
        json r = json::array();
        for (const auto& slot : row) r.push_back(slot ? (*slot == Spin::kUp ? "up" : "down") : "unused");
        s.push_back(std::move(r));
    }
    j["S"] = std::move(s);

    const auto& d = cfg.distinguishability;
    if (d.gram) {
        j["distinguishability"] = {{"gram", cmatrix_json(*d.gram)}};
    } else if (d.delays) {
        j["distinguishability"] = {{"delays", d.delays->delays}, {"coherence_length", d.delays->coherence_length}};
    } else {
        j["distinguishability"] = {{"uniform_overlap", d.uniform_overlap.value_or(1.0)}};
    }
    j["case"] = cfg.case_label;
    j["witness_margin"] = cfg.witness_margin;
    if (cfg.tomography) {
        const auto& t = *cfg.tomography;
        json settings = json::array();
        for (const auto& st : t.settings) settings.push_back(st.to_string());
        j["tomography"] = {{"shots", t.shots},          {"seed", t.seed},   {"settings", settings},
                           {"max_iters", t.mle.max_iters}, {"tol", t.mle.tol}, {"dilution", t.mle.dilution}};
    }
    return j;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xF];
    }
    return out;
}

std::string config_hash(const ExperimentConfig& cfg) { return sha256_hex(canonical_json(cfg).dump()); }

}  // namespace overlapq::cli
