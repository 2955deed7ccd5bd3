// Copyright 2026 The bellkit Authors
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

// Command-line front end. One subcommand per process; JSON (or CSV for
// sweep-alpha) on standard output; identical invocations give byte-identical
// output. Exit codes: 0 success, 2 validation error, 3 capacity error.
// BELLKIT_THREADS overrides the worker count of parallel stages.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellkit/bellkit.hpp"

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kQuarterPi = std::numbers::pi / 4.0;

struct CliOptions {
    std::string state = "ghz";
    int n = 0;
    double alpha = 0.0;
    bool alpha_set = false;
    double visibility = 1.0;
    bool visibility_set = false;
    bool optimize = false;
    int starts = 32;
    int max_iterations = 2000;
    double tolerance = 1e-8;
    std::uint64_t seed = 0;
    int steps = 0;
    std::string sign = "mabk";
};

void check_extended_party_count(int n) {
    if (n < 3) {
        throw bellkit::ValidationError(
            "the extended operator needs --n of at least 3");
    }
    if (n > bellkit::kMaxQubits) {
        throw bellkit::CapacityError(
            "--n " + std::to_string(n) + " exceeds the dense cap of " +
            std::to_string(bellkit::kMaxQubits) + " qubits");
    }
}

double checked_alpha(const CliOptions &opt) {
    if (!opt.alpha_set) {
        throw bellkit::ValidationError("this state requires --alpha");
    }
    if (!(opt.alpha >= 0.0 && opt.alpha <= kHalfPi)) {
        throw bellkit::ValidationError("--alpha must lie in [0, pi/2]");
    }
    return opt.alpha;
}

/// Extended operator selected by --sign: the MABK sign function, or a file
/// of 2^M whitespace-separated +-1 entries defining the inner operator.
bellkit::TermMap load_extended_terms(const CliOptions &opt, int *n_out) {
    if (opt.sign == "mabk") {
        check_extended_party_count(opt.n);
        *n_out = opt.n;
        return bellkit::extended_mabk_terms(opt.n);
    }
    std::ifstream file(opt.sign);
    if (!file) {
        throw bellkit::ValidationError("cannot open sign table file: " +
                                       opt.sign);
    }
    const bellkit::SignTable table = bellkit::parse_sign_table(file);
    const int n = table.num_parties + 1;
    if (n > bellkit::kMaxQubits) {
        throw bellkit::CapacityError(
            "sign table on " + std::to_string(table.num_parties) +
            " parties extends to " + std::to_string(n) +
            ", above the cap of " + std::to_string(bellkit::kMaxQubits));
    }
    if (opt.n != 0 && opt.n != n) {
        throw bellkit::ValidationError(
            "--n " + std::to_string(opt.n) + " contradicts the sign table, "
            "which extends to " + std::to_string(n) + " parties");
    }
    *n_out = n;
    return bellkit::extended_terms(bellkit::wwzb_terms(table));
}

bellkit::OptimizerConfig optimizer_config(const CliOptions &opt) {
    bellkit::OptimizerConfig config;
    config.starts = opt.starts;
    config.max_iterations = opt.max_iterations;
    config.tolerance = opt.tolerance;
    config.seed = opt.seed;
    return config;
}

int run_violation(const CliOptions &opt) {
    const bool needs_optimizer =
        opt.optimize || opt.state == "w" || opt.state == "cluster4";

    bellkit::ViolationReport report;
    report.state_name = opt.state;
    report.lhv_bound = 1.0;

    int n = opt.n;
    if (opt.state == "cluster4") {
        if (n == 0) {
            n = 4;
        } else if (n != 4) {
            throw bellkit::ValidationError("cluster4 is a 4-qubit state");
        }
    }
    check_extended_party_count(n);
    report.n = n;

    double alpha = kQuarterPi;
    if (opt.state == "gghz") {
        alpha = checked_alpha(opt);
    } else if (opt.alpha_set) {
        throw bellkit::ValidationError(
            "--alpha applies only to --state gghz");
    }
    if (opt.state == "noisy-ghz") {
        if (!opt.visibility_set) {
            throw bellkit::ValidationError("noisy-ghz requires --visibility");
        }
        if (!(opt.visibility >= 0.0 && opt.visibility <= 1.0)) {
            throw bellkit::ValidationError("--visibility must lie in [0, 1]");
        }
    } else if (opt.visibility_set) {
        throw bellkit::ValidationError(
            "--visibility applies only to --state noisy-ghz");
    }

    const bellkit::TermMap terms = bellkit::extended_mabk_terms(n);

    if (needs_optimizer) {
        const bellkit::OptimizerConfig config = optimizer_config(opt);
        bellkit::OptimizationResult result;
        if (opt.state == "ghz" || opt.state == "gghz") {
            result = bellkit::optimize_settings(
                bellkit::generalized_ghz(n, alpha), terms, config);
            report.alpha = alpha;
        } else if (opt.state == "w") {
            result = bellkit::optimize_settings(bellkit::w_state(n), terms,
                                                config);
        } else if (opt.state == "cluster4") {
            result = bellkit::optimize_settings(bellkit::cluster4(), terms,
                                                config);
        } else if (opt.state == "noisy-ghz") {
            result = bellkit::optimize_settings(
                bellkit::noisy_ghz(n, opt.visibility), terms, config);
        } else {
            throw bellkit::ValidationError("unknown state: " + opt.state);
        }
        report.quantum_value = result.value;
        report.settings = std::move(result.settings);
        report.method = "optimized";
        report.seed = static_cast<long long>(config.seed);
    } else {
        // Closed form: canonical settings attain
        // sqrt(2^{n-2} sin^2 2a + cos^2 2a); white noise scales it by v.
        if (opt.state == "ghz" || opt.state == "gghz") {
            report.alpha = alpha;
            report.quantum_value = bellkit::gghz_violation_closed(n, alpha);
        } else if (opt.state == "noisy-ghz") {
            report.quantum_value =
                opt.visibility * bellkit::gghz_violation_closed(n, kQuarterPi);
        } else {
            throw bellkit::ValidationError("unknown state: " + opt.state);
        }
        report.settings = bellkit::canonical_gghz_settings(n, alpha);
        report.method = "closed-form";
    }
    report.violation_factor = report.quantum_value / report.lhv_bound;
    std::cout << bellkit::to_json(report) << "\n";
    return 0;
}

int run_sweep_alpha(const CliOptions &opt) {
    check_extended_party_count(opt.n);
    if (opt.steps < 2) {
        throw bellkit::ValidationError("--steps must be at least 2");
    }
    const bellkit::TermMap terms = bellkit::extended_mabk_terms(opt.n);
    std::cout << "alpha,closed_form,matrix_value,violates\n";
    for (int i = 0; i < opt.steps; ++i) {
        const double alpha = kHalfPi * i / (opt.steps - 1);
        const double closed = bellkit::gghz_violation_closed(opt.n, alpha);
        const double matrix = bellkit::quantum_value(
            bellkit::generalized_ghz(opt.n, alpha), terms,
            bellkit::canonical_gghz_settings(opt.n, alpha));
        const bool violates = matrix > 1.0 + bellkit::kLhvBoundTol;
        std::cout << bellkit::format_double(alpha) << ","
                  << bellkit::format_double(closed) << ","
                  << bellkit::format_double(matrix) << ","
                  << (violates ? "true" : "false") << "\n";
    }
    return 0;
}

int run_lhv_bound(const CliOptions &opt) {
    int n = 0;
    const bellkit::TermMap terms = load_extended_terms(opt, &n);
    const bellkit::LhvBoundReport report =
        n <= bellkit::kLhvExhaustiveMaxParties
            ? bellkit::verify_bound(terms)
            : bellkit::verify_bound_sharded(terms);
    std::cout << bellkit::to_json(report) << "\n";
    return 0;
}

int run_max_eig(const CliOptions &opt) {
    check_extended_party_count(opt.n);
    const double alpha = opt.alpha_set ? checked_alpha(opt) : kQuarterPi;
    const double value =
        bellkit::max_violation(bellkit::extended_mabk_terms(opt.n),
                               bellkit::canonical_gghz_settings(opt.n, alpha));
    std::cout << "{\n  \"n\": " << opt.n
              << ",\n  \"alpha\": " << bellkit::format_double(alpha)
              << ",\n  \"max_violation\": " << bellkit::format_double(value)
              << "\n}\n";
    return 0;
}

int run_visibility(const CliOptions &opt) {
    check_extended_party_count(opt.n);
    std::cout << "{\n  \"n\": " << opt.n << ",\n  \"v_thr\": "
              << bellkit::format_double(bellkit::threshold_visibility(opt.n))
              << ",\n  \"v_thr_mabk\": "
              << bellkit::format_double(
                     bellkit::mabk_threshold_visibility(opt.n))
              << "\n}\n";
    return 0;
}

int run_terms(const CliOptions &opt) {
    int n = 0;
    const bellkit::TermMap terms = load_extended_terms(opt, &n);
    std::cout << bellkit::term_map_report_json(terms) << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Two-setting Bell operator toolkit: builds extended "
                 "correlation operators, certifies the local-realism bound "
                 "by exhaustive enumeration, and reports quantum violations "
                 "for named state families."};
    app.require_subcommand(1);
    CliOptions opt;

    auto *violation = app.add_subcommand(
        "violation", "Violation report for a named state (JSON)");
    violation->add_option("--state", opt.state,
                          "ghz | gghz | w | cluster4 | noisy-ghz")
        ->default_str("ghz");
    violation->add_option("--n", opt.n, "Number of qubits");
    auto *alpha_opt = violation->add_option(
        "--alpha", opt.alpha, "State parameter for gghz, in [0, pi/2]");
    auto *vis_opt = violation->add_option(
        "--visibility", opt.visibility, "White-noise weight for noisy-ghz");
    violation->add_flag("--optimize", opt.optimize,
                        "Search settings instead of the closed form");
    violation->add_option("--starts", opt.starts, "Optimizer restarts")
        ->default_str("32");
    violation
        ->add_option("--max-iterations", opt.max_iterations,
                     "Optimizer iteration cap per start")
        ->default_str("2000");
    violation
        ->add_option("--tolerance", opt.tolerance,
                     "Optimizer convergence tolerance")
        ->default_str("1e-8");
    violation->add_option("--seed", opt.seed, "Optimizer seed")
        ->default_str("0");

    auto *sweep = app.add_subcommand(
        "sweep-alpha", "Closed form vs matrix value over alpha in [0, pi/2] "
                       "(CSV)");
    sweep->add_option("--n", opt.n, "Number of qubits")->required();
    sweep->add_option("--steps", opt.steps, "Number of rows, at least 2")
        ->required();

    auto *lhv = app.add_subcommand(
        "lhv-bound", "Exhaustive deterministic-strategy bound check (JSON)");
    lhv->add_option("--n", opt.n, "Number of qubits");
    lhv->add_option("--sign", opt.sign,
                    "mabk, or a file of 2^M whitespace-separated +-1 entries")
        ->default_str("mabk");

    auto *max_eig = app.add_subcommand(
        "max-eig", "Largest |eigenvalue| at canonical settings (JSON)");
    max_eig->add_option("--n", opt.n, "Number of qubits")->required();
    auto *max_eig_alpha = max_eig->add_option(
        "--alpha", opt.alpha, "Settings parameter, defaults to pi/4");

    auto *visibility = app.add_subcommand(
        "visibility", "Threshold visibilities of both inequality families "
                      "(JSON)");
    visibility->add_option("--n", opt.n, "Number of qubits")->required();

    auto *terms = app.add_subcommand(
        "terms", "Correlation-term dump of the extended operator (JSON)");
    terms->add_option("--n", opt.n, "Number of qubits");
    terms->add_option("--sign", opt.sign,
                      "mabk, or a file of 2^M whitespace-separated +-1 "
                      "entries")
        ->default_str("mabk");

    try {
        app.parse(argc, argv);
        opt.alpha_set = alpha_opt->count() > 0 || max_eig_alpha->count() > 0;
        opt.visibility_set = vis_opt->count() > 0;
        if (app.got_subcommand(violation)) {
            return run_violation(opt);
        }
        if (app.got_subcommand(sweep)) {
            return run_sweep_alpha(opt);
        }
        if (app.got_subcommand(lhv)) {
            return run_lhv_bound(opt);
        }
        if (app.got_subcommand(max_eig)) {
            return run_max_eig(opt);
        }
        if (app.got_subcommand(visibility)) {
            return run_visibility(opt);
        }
        if (app.got_subcommand(terms)) {
            return run_terms(opt);
        }
        return 2;
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const bellkit::ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const bellkit::CapacityError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
