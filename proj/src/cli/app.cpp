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

#include "overlapq/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "overlapq/cli/config.hpp"
#include "overlapq/cli/pipeline.hpp"

namespace overlapq::cli {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << content)) {
        throw Error(ErrorCode::kInvalidInput, "cannot write '" + path.string() + "'");
    }
}

fs::path ensure_dir(const std::string& dir) {
    fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw Error(ErrorCode::kInvalidInput, "cannot create output directory '" + p.string() + "'");
    return p;
}

std::string render(const nlohmann::json& report, const std::string& format) {
    return format == "csv" ? report_csv(report) : report.dump(2) + "\n";
}

int cmd_run(const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed,
            const std::string& format, std::ostream& out) {
    ExperimentConfig cfg = load_config(config_path);
    if (seed) {
        if (!cfg.tomography) {
            throw ConfigError(ErrorCode::kInvalidInput, "tomography", "--seed given but the config has no tomography section");
        }
        cfg.tomography->seed = *seed;
    }
    const RunResult result = run_experiment(cfg);
    const fs::path dir = ensure_dir(out_dir);

    const std::string matrix = format_density_matrix(result.traced.rho.matrix(), result.traced.rho.num_qubits());
    write_file(dir / cfg.output.matrix_file, matrix);
    if (result.tomography) {
        std::ostringstream counts;
        write_counts(counts, result.tomography->counts);
        write_file(dir / cfg.output.counts_file, counts.str());
        write_file(dir / cfg.output.mle_matrix_file,
                   format_density_matrix(result.tomography->mle.rho.matrix(), result.tomography->mle.rho.num_qubits()));
    }
    nlohmann::json report = run_report_json(cfg, result, cfg.output.matrix_file, sha256_hex(matrix));
    if (result.tomography) {
        report["tomography"]["counts_file"] = cfg.output.counts_file;
        report["tomography"]["mle_matrix_file"] = cfg.output.mle_matrix_file;
    }
    const std::string text = render(report, format);
    fs::path report_name = cfg.output.report_file;
    if (format == "csv") report_name.replace_extension(".csv");
    write_file(dir / report_name, text);
    out << text;
    return kExitOk;
}

int cmd_scan(const std::string& config_path, const std::string& param, double from, double to, int steps,
             const std::string& out_dir, const std::string& format, std::ostream& out) {
    const ExperimentConfig cfg = load_config(config_path);
    const auto rows = run_scan(cfg, param, from, to, steps);
    const std::string text = format == "csv" ? scan_csv(param, rows) : scan_json(param, rows).dump(2) + "\n";
    if (!out_dir.empty()) {
        const fs::path dir = ensure_dir(out_dir);
        write_file(dir / (format == "csv" ? "scan.csv" : "scan.json"), text);
    }
    out << text;
    return kExitOk;
}

int cmd_reconstruct(const std::string& counts_path, const std::string& out_dir, const std::string& format,
                    const MleOptions& options, std::ostream& out) {
    std::ifstream in(counts_path);
    if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open counts file '" + counts_path + "'");
    const CountsTable counts = read_counts(in);
    const ReconstructionResult r = reconstruct_counts(counts, options);
    const fs::path dir = ensure_dir(out_dir);
    const std::string matrix = format_density_matrix(r.mle.rho.matrix(), r.mle.rho.num_qubits());
    write_file(dir / "rho_mle.txt", matrix);
    const auto report = reconstruct_report_json(r, counts_path, "rho_mle.txt", sha256_hex(matrix));
    const std::string text = render(report, format);
    write_file(dir / (format == "csv" ? "reconstruct_report.csv" : "reconstruct_report.json"), text);
    out << text;
    return kExitOk;
}

}  // namespace

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement of partially distinguishable identical particles via spatial overlap", "overlapq"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string config_path;
    std::string out_dir;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    const auto formats = CLI::IsMember({"json", "csv"});

    auto* run = app.add_subcommand("run", "Run one experiment configuration");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--out-dir", out_dir, "Output directory")->default_val(".");
    run->add_option("--seed", seed, "Override the tomography seed");
    run->add_option("--format", format, "Report format")->check(formats);

    std::string param;
    double from = 0.0;
    double to = 1.0;
    int steps = 0;
    auto* scan = app.add_subcommand("scan", "Scan one parameter and tabulate fidelities");
    scan->add_option("--config", config_path, "Experiment config (JSON)")->required();
    scan->add_option("--param", param, "g, L<i>, or a GHZ amplitude name")->required();
    scan->add_option("--from", from, "First value")->required();
    scan->add_option("--to", to, "Last value")->required();
    scan->add_option("--steps", steps, "Number of points (inclusive of both ends)")->required();
    scan->add_option("--out-dir", out_dir, "Also write the table here");
    scan->add_option("--format", format, "Table format")->check(formats);

    std::string counts_path;
    MleOptions mle;
    auto* reconstruct = app.add_subcommand("reconstruct", "Maximum-likelihood reconstruction from a counts file");
    reconstruct->add_option("--counts", counts_path, "Counts file")->required();
    reconstruct->add_option("--out-dir", out_dir, "Output directory")->default_val(".");
    reconstruct->add_option("--format", format, "Report format")->check(formats);
    reconstruct->add_option("--max-iters", mle.max_iters, "MLE iteration cap")->check(CLI::PositiveNumber);
    reconstruct->add_option("--tol", mle.tol, "MLE likelihood-gain tolerance");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    const std::string source = run->parsed() || scan->parsed() ? config_path : counts_path;
    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, seed, format, out);
        if (scan->parsed()) return cmd_scan(config_path, param, from, to, steps, out_dir, format, out);
        return cmd_reconstruct(counts_path, out_dir, format, mle, out);
    } catch (const ConfigError& e) {
        err << "error: " << source << ": " << e.field() << ": [" << error_code_name(e.code()) << "] " << e.what()
            << "\n";
        return is_numerical_failure(e.code()) ? kExitNumerical : kExitValidation;
    } catch (const Error& e) {
        err << "error: " << source << ": [" << error_code_name(e.code()) << "] " << e.what() << "\n";
        return is_numerical_failure(e.code()) ? kExitNumerical : kExitValidation;
    }
}

}  // namespace overlapq::cli
