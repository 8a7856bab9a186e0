// Copyright 2026 The cliffxeb authors
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
//
// Command-line front end. Exit codes: 0 success, 2 configuration or usage
// error, 3 fit infeasible / rate indeterminate, 4 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cliffxeb/analysis.hpp"
#include "cliffxeb/config.hpp"
#include "cliffxeb/ensembles.hpp"
#include "cliffxeb/records.hpp"
#include "cliffxeb/twirl_oracle.hpp"
#include "cliffxeb/verify_suite.hpp"

namespace {

using namespace cliffxeb;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitFit = 3;
constexpr int kExitVerify = 4;

Window parse_window(const std::string &text) {
    const size_t colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
        throw std::invalid_argument("window: expected 'lo:hi', got '" + text + "'");
    try {
        return Window{std::stoi(text.substr(0, colon)),
                      std::stoi(text.substr(colon + 1))};
    } catch (const std::exception &) {
        throw std::invalid_argument("window: expected integers in 'lo:hi', got '" +
                                    text + "'");
    }
}

std::vector<std::pair<int, int>> parse_edge_list(const std::string &text) {
    std::vector<std::pair<int, int>> out;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        const size_t dash = tok.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("edges: expected 'a-b' pairs, got '" + tok +
                                        "'");
        out.emplace_back(std::stoi(tok.substr(0, dash)),
                         std::stoi(tok.substr(dash + 1)));
    }
    return out;
}

struct CommonOverrides {
    std::optional<uint32_t> seed;
    std::optional<int> workers;

    void apply(RunConfig &cfg) const {
        if (seed) cfg.master_seed = *seed;
        if (workers) cfg.workers = *workers;
    }
};

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << content;
}

int cmd_run(const std::string &config_path, const std::string &out_dir,
            const CommonOverrides &ov) {
    RunConfig cfg = load_config_file(config_path);
    ov.apply(cfg);
    const RunOutcome outcome = run_into_directory(cfg, out_dir, false, &std::cout);
    std::cout << "run complete: " << outcome.computed << " points computed, "
              << outcome.skipped << " already present\n"
              << "records: " << out_dir << "/records.txt\n";
    return kExitOk;
}

int cmd_mix(const std::string &config_path, const std::string &out_dir,
            const CommonOverrides &ov, const std::optional<Window> &window_opt) {
    RunConfig cfg = load_config_file(config_path);
    ov.apply(cfg);
    if (!cfg.noise.is_noiseless()) {
        std::cerr << "mix: warning: noise keys in the config are ignored; the "
                     "mixing rate is a property of the noiseless ensemble\n";
        cfg.noise = NoiseModel{};
    }
    const RunOutcome outcome = run_into_directory(cfg, out_dir, true, &std::cout);
    const std::vector<XebPoint> ideal = to_xeb_points(outcome.points, "ideal");
    Window window{ideal.front().m, ideal.back().m};
    if (window_opt) window = *window_opt;
    const MixRate mix = mixing_rate(ideal, cfg.ensemble.n, window);
    const double limit = xeb_limit(cfg.ensemble.n);
    std::cout << "asymptote: " << format_double(limit) << " (n = " << cfg.ensemble.n
              << ")\n"
              << "per-cycle mixing rate r = " << mix.r << "  (95% CI [" << mix.r_lo
              << ", " << mix.r_hi << "], " << mix.points_used << " points)\n";
    std::cout << "mix r=" << format_double(mix.r) << " r_lo=" << format_double(mix.r_lo)
              << " r_hi=" << format_double(mix.r_hi) << " points=" << mix.points_used
              << " window=" << window.lo << ":" << window.hi << "\n";
    return kExitOk;
}

int cmd_fit(const std::string &results_path, const std::optional<Window> &window_opt,
            const std::string &dem_config_path, const std::optional<double> &dem_p) {
    const std::vector<PointRecord> records = load_points_file(results_path);
    const std::vector<XebPoint> noisy = to_xeb_points(records, "noisy");
    const std::vector<XebPoint> ideal = to_xeb_points(records, "ideal");
    if (noisy.empty())
        throw FitInfeasibleError("fit: the results contain no noisy-series points");
    int n = 0;
    for (const PointRecord &r : records)
        if (r.series == "noisy") {
            n = r.n;
            break;
        }

    Window window{noisy.front().m, noisy.back().m};
    if (window_opt) {
        window = *window_opt;
    } else if (!ideal.empty()) {
        if (const std::optional<int> start = suggest_window_start(ideal, n)) {
            window.lo = *start;
            std::cout << "window: starting at m = " << *start
                      << " (ideal series settled; pass --window to override)\n";
        } else {
            std::cout << "window: ideal series never settles in this sweep; "
                         "using every point\n";
        }
    }

    const DecayFit fit = fit_exponential(noisy, window);
    std::cout << "decay fit over m in [" << fit.window.lo << ", " << fit.window.hi
              << "]: q(m) = B * p^m\n"
              << "  p = " << format_double(fit.p) << "  (ln-slope se "
              << format_double(fit.slope_se) << ")\n"
              << "  B = " << format_double(fit.B) << "\n"
              << "  points used: " << fit.points_used;
    if (!fit.excluded_m.empty()) {
        std::cout << "  (excluded non-positive q at m =";
        for (const int m : fit.excluded_m) std::cout << " " << m;
        std::cout << ")";
    }
    std::cout << "\n";
    std::cout << "fit p=" << format_double(fit.p) << " B=" << format_double(fit.B)
              << " slope_se=" << format_double(fit.slope_se) << " window="
              << fit.window.lo << ":" << fit.window.hi << " points=" << fit.points_used
              << "\n";

    int in_window = 0;
    for (const XebPoint &p : noisy)
        if (p.m >= window.lo && p.m <= window.hi) in_window++;
    if (in_window >= 4) {
        const FreeOffsetFit fo = fit_free_offset(noisy, window);
        const bool a_zero = std::abs(fo.A) <= 3.0 * fo.A_se;
        std::cout << "free-offset diagnostic: A = " << format_double(fo.A) << " +- "
                  << format_double(fo.A_se) << ", p = " << format_double(fo.p)
                  << "; A consistent with 0: " << (a_zero ? "yes" : "no") << "\n";
        std::cout << "freeA A=" << format_double(fo.A) << " A_se="
                  << format_double(fo.A_se) << " p=" << format_double(fo.p) << "\n";
    } else {
        std::cout << "free-offset diagnostic: skipped (needs 4 in-window points)\n";
    }

    std::optional<double> p_dem = dem_p;
    if (!p_dem && !dem_config_path.empty()) {
        const RunConfig cfg = load_config_file(dem_config_path);
        p_dem = ensemble_cycle_fidelity(cfg.ensemble, cfg.noise);
    }
    if (!p_dem) {
        std::cout << "digital error model: skipped (pass --config or --dem-p)\n";
        return kExitOk;
    }
    if (ideal.empty()) {
        std::cout << "digital error model: skipped (no ideal series for the "
                     "mixing rate)\n";
        return kExitOk;
    }
    MixRate mix;
    try {
        mix = mixing_rate(ideal, n, Window{ideal.front().m, ideal.back().m});
    } catch (const RateIndeterminateError &e) {
        std::cout << "digital error model: skipped (" << e.what() << ")\n";
        return kExitOk;
    }
    const DemReport dem = compare_to_digital_model(fit, *p_dem, mix);
    std::cout << "digital error model: per-cycle fidelity " << format_double(dem.p_dem)
              << ", fitted p / model = " << format_double(dem.ratio) << "\n"
              << "  mixing rate r = " << format_double(dem.mix_r)
              << "; prediction valid: " << (dem.valid ? "yes" : "no")
              << (dem.valid ? "" : " (mixing-dominated: model fidelity at or below r)")
              << "\n";
    std::cout << "dem p_fit=" << format_double(dem.p_fit) << " p_dem="
              << format_double(dem.p_dem) << " ratio=" << format_double(dem.ratio)
              << " r=" << format_double(dem.mix_r) << " valid=" << (dem.valid ? 1 : 0)
              << "\n";
    return kExitOk;
}

int cmd_gap(const std::string &topology, int n, int rows, int cols, int reps,
            const std::string &edges) {
    EnsembleSpec spec;
    if (topology == "chain") {
        spec.kind = EnsembleKind::kChain1d;
    } else if (topology == "grid") {
        spec.kind = EnsembleKind::kGrid2d;
    } else if (topology == "twirl_star") {
        spec.kind = EnsembleKind::kApproxTwirlStar;
    } else if (topology == "twirl_graph") {
        spec.kind = EnsembleKind::kApproxTwirlGraph;
    } else {
        throw std::invalid_argument("gap: unknown topology '" + topology + "'");
    }
    spec.n = n;
    spec.rows = rows;
    spec.cols = cols;
    spec.twirl_reps = reps;
    spec.edges = parse_edge_list(edges);

    const TwirlMatrix t = build_twirl_matrix(ensemble_cycle_measure(spec), spec.n);
    const std::vector<double> sv = singular_values(t);
    const double s3 = third_singular_value(t);
    const bool contracting = s3 <= 1.0 - 1e-6;
    std::cout << "averaged-cycle matrix: " << t.dim << " x " << t.dim << "\n"
              << "  leading singular values: " << format_double(sv[0]) << ", "
              << format_double(sv[1]) << "\n"
              << "  sigma3 = " << format_double(s3) << "  (gap " << format_double(1.0 - s3)
              << ")\n"
              << "  strongly contracting: " << (contracting ? "yes" : "no") << "\n";
    std::cout << "gap topology=" << topology << " n=" << n
              << " sigma3=" << format_double(s3) << " contracting="
              << (contracting ? 1 : 0) << "\n";
    return kExitOk;
}

int cmd_verify() {
    const std::vector<VerifyCheck> checks = run_verify_suite();
    bool all_pass = true;
    std::printf("%-24s %-6s %s\n", "check", "result", "detail");
    for (const VerifyCheck &c : checks) {
        all_pass = all_pass && c.pass;
        std::printf("%-24s %-6s %s\n", c.name.c_str(), c.pass ? "PASS" : "FAIL",
                    c.detail.c_str());
    }
    std::printf("%s\n", all_pass ? "all checks passed" : "verification FAILED");
    return all_pass ? kExitOk : kExitVerify;
}

int cmd_export(const std::string &results_path, const std::string &format,
               const std::string &out_path) {
    const std::vector<PointRecord> points = load_points_file(results_path);
    if (format == "csv") {
        write_text_file(out_path, points_to_csv(points));
    } else if (format == "svg") {
        write_text_file(out_path, points_to_svg(points));
    } else {
        throw std::invalid_argument("export: unknown format '" + format +
                                    "' (expected csv or svg)");
    }
    std::cout << "wrote " << out_path << " (" << points.size() << " points)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{
        "Clifford cross-entropy benchmarking: seeded ensemble sweeps, decay "
        "fits, and ensemble spectral diagnostics"};
    app.require_subcommand(1);

    std::string config_path, out_dir, results_path, window_text, format, out_path;
    std::string gap_topology = "chain", gap_edges;
    std::string dem_config;
    int gap_n = 1, gap_rows = 0, gap_cols = 0, gap_reps = 2;
    double dem_p_value = 0.0;
    CommonOverrides ov;
    uint32_t seed_value = 0;
    int workers_value = 0;

    const auto add_overrides = [&](CLI::App *sub) {
        sub->add_option("--seed", seed_value, "override the master seed")
            ->each([&](const std::string &) { ov.seed = seed_value; });
        sub->add_option("--workers", workers_value,
                        "override the worker count (0 = all cores)")
            ->each([&](const std::string &) { ov.workers = workers_value; });
    };

    CLI::App *run = app.add_subcommand("run", "execute a sweep described by a config");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    add_overrides(run);

    CLI::App *mix = app.add_subcommand(
        "mix", "run the noiseless ensemble and estimate its mixing rate");
    mix->add_option("--config", config_path, "config file")->required();
    mix->add_option("--out", out_dir, "output directory")->required();
    mix->add_option("--window", window_text, "cycle window lo:hi");
    add_overrides(mix);

    CLI::App *fit = app.add_subcommand(
        "fit", "fit the exponential decay in a results file and compare against "
               "the digital error model");
    fit->add_option("--results", results_path, "records.txt or exported CSV")
        ->required();
    fit->add_option("--window", window_text, "cycle window lo:hi");
    fit->add_option("--config", dem_config,
                    "config used to derive the digital-error-model fidelity");
    CLI::Option *dem_p_opt =
        fit->add_option("--dem-p", dem_p_value,
                        "digital-error-model per-cycle fidelity, overrides --config");

    CLI::App *gap = app.add_subcommand(
        "gap", "third singular value of an ensemble's averaged cycle (n <= 2)");
    gap->add_option("--topology", gap_topology,
                    "chain | grid | twirl_star | twirl_graph");
    gap->add_option("-n,--n", gap_n, "qubit count (1 or 2)")->required();
    gap->add_option("--rows", gap_rows, "grid rows");
    gap->add_option("--cols", gap_cols, "grid cols");
    gap->add_option("--reps", gap_reps, "twirl repetitions");
    gap->add_option("--edges", gap_edges, "twirl_graph edges, e.g. 0-1");

    app.add_subcommand("verify", "run the oracle cross-check suite");

    CLI::App *exp = app.add_subcommand("export", "export results as CSV or SVG");
    exp->add_option("--results", results_path, "records.txt or exported CSV")
        ->required();
    exp->add_option("--format", format, "csv | svg")->required();
    exp->add_option("--out", out_path, "output file")->required();

    CLI::App *cref = app.add_subcommand("config-reference",
                                        "print every config key with its default");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*cref) {
            std::cout << config_reference();
            return kExitOk;
        }
        if (*run) return cmd_run(config_path, out_dir, ov);
        if (*mix) {
            std::optional<Window> w;
            if (!window_text.empty()) w = parse_window(window_text);
            return cmd_mix(config_path, out_dir, ov, w);
        }
        if (*fit) {
            std::optional<Window> w;
            if (!window_text.empty()) w = parse_window(window_text);
            std::optional<double> dp;
            if (dem_p_opt->count() > 0) dp = dem_p_value;
            return cmd_fit(results_path, w, dem_config, dp);
        }
        if (*gap) return cmd_gap(gap_topology, gap_n, gap_rows, gap_cols, gap_reps,
                                 gap_edges);
        if (app.get_subcommand("verify")->parsed()) return cmd_verify();
        if (*exp) return cmd_export(results_path, format, out_path);
    } catch (const FitInfeasibleError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFit;
    } catch (const RateIndeterminateError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFit;
    } catch (const TwirlConstructionError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerify;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
