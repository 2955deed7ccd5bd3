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

/**
 * Quantum values, closed-form violation curves, threshold visibilities,
 * and derivative-free optimization of measurement settings.
 *
 * Closed forms implemented for the generalized GHZ family
 * cos(a)|0..0> + sin(a)|1..1> against the extended MABK operator:
 *
 *  - correlation of a product of Bloch observables:
 *      [cos^2 a + (-1)^N sin^2 a] prod_i cos(theta_i)
 *        + sin(2a) prod_i sin(theta_i) cos(sum_i phi_i)
 *  - the canonical settings put parties 1..N-1 at sigma_x (unprimed) and
 *    sigma_y (primed); party N measures in the plane phi = (2-N) pi/4 at
 *    polar angles theta_N and pi - theta_N
 *  - with those settings the expectation reduces to
 *      2^{(N-2)/2} sin(2a) sin(theta_N) + cos(2a) cos(theta_N)
 *    whose maximum over theta_N is sqrt(2^{N-2} sin^2 2a + cos^2 2a),
 *    attained at theta_N = atan2(2^{(N-2)/2} sin 2a, cos 2a).
 *
 * The optimizer is a multi-start Nelder-Mead simplex on the negated
 * quantum value over all 4N Bloch angles. Every start draws its own
 * generator seeded from (config.seed, start index), starts reduce by best
 * value with lowest-index tie-break, and the winner is polished by one
 * more descent, so results are bit-identical for a fixed config
 * regardless of thread count.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bellkit/bell_operators.hpp"
#include "bellkit/errors.hpp"
#include "bellkit/linalg.hpp"
#include "bellkit/observables.hpp"
#include "bellkit/parallel.hpp"
#include "bellkit/states.hpp"

namespace bellkit {

/// One violation computation, ready for serialization. All values are raw
/// operator expectations against the unit LHV bound, so violation_factor
/// equals quantum_value / lhv_bound.
struct ViolationReport {
    std::string state_name;
    int n = 0;
    std::optional<double> alpha;
    double quantum_value = 0.0;
    double lhv_bound = 1.0;
    double violation_factor = 0.0;
    std::vector<ObserverSettings> settings;
    std::string method; ///< "closed-form", "eigen", or "optimized"
    std::optional<long long> seed;
};

/// Controls for optimize_settings. Identical configs give bit-identical
/// results.
struct OptimizerConfig {
    int starts = 32;
    int max_iterations = 2000;
    double tolerance = 1e-8;
    std::uint64_t seed = 0;
};

/// Settings found by the optimizer and the quantum value they attain.
struct OptimizationResult {
    std::vector<ObserverSettings> settings;
    double value = 0.0;
};

namespace detail {

inline void check_counts(int state_qubits, const TermMap &terms,
                         std::size_t settings_count) {
    if (state_qubits != terms.num_parties) {
        throw ValidationError("state qubit count " +
                              std::to_string(state_qubits) +
                              " does not match operator party count " +
                              std::to_string(terms.num_parties));
    }
    if (settings_count != static_cast<std::size_t>(terms.num_parties)) {
        throw ValidationError("settings count " +
                              std::to_string(settings_count) +
                              " does not match party count " +
                              std::to_string(terms.num_parties));
    }
}

/// Applies a 2x2 operator to qubit `party` (0-based, party 1 = index 0 =
/// most significant bit) of an amplitude vector in place.
inline void apply_single_qubit(ComplexVector &amps, int num_qubits, int party,
                               const ComplexMatrix &op) {
    const Eigen::Index stride = Eigen::Index{1} << (num_qubits - 1 - party);
    const Complex m00 = op(0, 0), m01 = op(0, 1);
    const Complex m10 = op(1, 0), m11 = op(1, 1);
    for (Eigen::Index base = 0; base < amps.size(); base += 2 * stride) {
        for (Eigen::Index off = 0; off < stride; ++off) {
            const Complex a0 = amps(base + off);
            const Complex a1 = amps(base + off + stride);
            amps(base + off) = m00 * a0 + m01 * a1;
            amps(base + off + stride) = m10 * a0 + m11 * a1;
        }
    }
}

} // namespace detail

/// <psi|B|psi> evaluated term by term with single-qubit applications;
/// never materializes the 2^N x 2^N matrix. Each term expectation is real
/// by Hermiticity.
inline double quantum_value(const StateVector &state, const TermMap &terms,
                            const std::vector<ObserverSettings> &settings) {
    const int n = terms.num_parties;
    detail::check_counts(state.num_qubits, terms, settings.size());
    if (n < 1 || n > kMaxQubits) {
        throw CapacityError("party count " + std::to_string(n) +
                            " exceeds cap " + std::to_string(kMaxQubits));
    }
    if (state.amplitudes.size() != (Eigen::Index{1} << n)) {
        throw ValidationError("amplitude count does not match qubit count");
    }
    std::vector<std::array<ComplexMatrix, 2>> local;
    local.reserve(n);
    for (const auto &s : settings) {
        local.push_back({bloch_observable(s.a), bloch_observable(s.a_prime)});
    }
    double total = 0.0;
    ComplexVector scratch(state.amplitudes.size());
    for (const auto &[key, coeff] : terms.terms) {
        scratch = state.amplitudes;
        for (int j = 0; j < n; ++j) {
            if (key[j] != 0) {
                detail::apply_single_qubit(scratch, n, j, local[j][key[j] - 1]);
            }
        }
        total += coeff * state.amplitudes.dot(scratch).real();
    }
    return total;
}

/// Tr(rho B) through the dense operator matrix. The trace is checked real.
inline double quantum_value(const DensityMatrix &state, const TermMap &terms,
                            const std::vector<ObserverSettings> &settings) {
    detail::check_counts(state.num_qubits, terms, settings.size());
    const ComplexMatrix b = build_operator_matrix(terms, settings);
    if (state.matrix.rows() != b.rows() || state.matrix.cols() != b.cols()) {
        throw ValidationError("density matrix dimension does not match "
                              "operator dimension");
    }
    return trace_product(state.matrix, b);
}

/// Largest |eigenvalue| of the built operator: the best quantum value any
/// state can reach at these settings.
inline double max_violation(const TermMap &terms,
                            const std::vector<ObserverSettings> &settings) {
    return hermitian_max_abs_eigenvalue(build_operator_matrix(terms, settings));
}

/// Correlation of one product of Bloch observables on
/// cos(a)|0..0> + sin(a)|1..1>; see the header comment for the formula.
inline double ghz_correlation_closed(int n, double alpha,
                                     const std::vector<Observable> &angles) {
    if (n < 2) {
        throw ValidationError("correlation needs at least 2 parties");
    }
    if (static_cast<int>(angles.size()) != n) {
        throw ValidationError("angle count does not match party count");
    }
    double prod_cos = 1.0;
    double prod_sin = 1.0;
    double phi_sum = 0.0;
    for (const auto &a : angles) {
        prod_cos *= std::cos(a.theta);
        prod_sin *= std::sin(a.theta);
        phi_sum += a.phi;
    }
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    const double parity = n % 2 == 0 ? 1.0 : -1.0;
    return (c * c + parity * s * s) * prod_cos +
           std::sin(2.0 * alpha) * prod_sin * std::cos(phi_sum);
}

/// Polar angle of party N's unprimed observable maximizing the canonical
/// expectation: atan(2^{(N-2)/2} tan 2a), plus pi on the second branch
/// (pi/4 <= a <= pi/2). atan2 realizes both branches and the continuous
/// limit pi/2 at a = pi/4.
inline double optimal_theta_n(int n, double alpha) {
    if (n < 3) {
        throw ValidationError("extended operator needs at least 3 parties");
    }
    if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2.0)) {
        throw ValidationError("alpha " + std::to_string(alpha) +
                              " outside [0, pi/2]");
    }
    const double scale = std::pow(2.0, (n - 2) / 2.0);
    return std::atan2(scale * std::sin(2.0 * alpha), std::cos(2.0 * alpha));
}

/// The settings attaining the closed-form maximum: parties 1..N-1 measure
/// sigma_x / sigma_y, party N measures at phi = (2-N) pi/4 with polar
/// angles theta_N and pi - theta_N.
inline std::vector<ObserverSettings> canonical_gghz_settings(int n,
                                                             double alpha) {
    const double theta_n = optimal_theta_n(n, alpha);
    const double half_pi = std::numbers::pi / 2.0;
    std::vector<ObserverSettings> settings(n);
    for (int j = 0; j + 1 < n; ++j) {
        settings[j].a = Observable{half_pi, 0.0};
        settings[j].a_prime = Observable{half_pi, half_pi};
    }
    const double phi_n = (2.0 - n) * std::numbers::pi / 4.0;
    settings[n - 1].a = Observable{theta_n, phi_n};
    settings[n - 1].a_prime = Observable{std::numbers::pi - theta_n, phi_n};
    return settings;
}

/// Closed-form maximal expectation sqrt(2^{N-2} sin^2 2a + cos^2 2a);
/// exceeds 1 for every a that is not, modulo pi/2, zero.
inline double gghz_violation_closed(int n, double alpha) {
    if (n < 3) {
        throw ValidationError("extended operator needs at least 3 parties");
    }
    const double s = std::sin(2.0 * alpha);
    const double c = std::cos(2.0 * alpha);
    return std::sqrt(std::ldexp(s * s, n - 2) + c * c);
}

/// Visibility above which the white-noise GHZ mixture violates the
/// extended operator bound: 2^{(2-N)/2}, the reciprocal of the maximal
/// violation.
inline double threshold_visibility(int n) {
    if (n < 3) {
        throw ValidationError("extended operator needs at least 3 parties");
    }
    return std::pow(2.0, (2.0 - n) / 2.0);
}

/// Same threshold for the plain N-party MABK inequality: 2^{(1-N)/2}.
inline double mabk_threshold_visibility(int n) {
    if (n < 2) {
        throw ValidationError("MABK operator needs at least 2 parties");
    }
    return std::pow(2.0, (1.0 - n) / 2.0);
}

namespace detail {

/// splitmix64 output for the given state; fixed-width arithmetic keeps the
/// stream identical on every platform.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform in [0, 1) with the standard 53-bit construction; avoids the
/// implementation-defined std::uniform_real_distribution.
inline double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Angle layout: x[4j..4j+3] = (theta, phi) of party j's unprimed then
/// primed observable.
inline std::vector<ObserverSettings>
unpack_settings(const std::vector<double> &x) {
    std::vector<ObserverSettings> settings(x.size() / 4);
    for (std::size_t j = 0; j < settings.size(); ++j) {
        settings[j].a = Observable{x[4 * j + 0], x[4 * j + 1]};
        settings[j].a_prime = Observable{x[4 * j + 2], x[4 * j + 3]};
    }
    return settings;
}

inline constexpr double kSimplexStep = 0.5;

/// Standard Nelder-Mead descent (reflection 1, expansion 2, contraction
/// 1/2, shrink 1/2). Stops when the value spread falls below `tolerance`
/// or after `max_iterations` rounds. Stable ordering makes ties, and so
/// the whole trajectory, deterministic.
template <typename Fn>
inline std::pair<std::vector<double>, double>
nelder_mead_minimize(const Fn &f, std::vector<double> x0, int max_iterations,
                     double tolerance) {
    const std::size_t d = x0.size();
    struct Vertex {
        std::vector<double> x;
        double fx;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(d + 1);
    simplex.push_back({x0, f(x0)});
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> x = x0;
        x[i] += kSimplexStep;
        const double fx = f(x);
        simplex.push_back({std::move(x), fx});
    }
    const auto by_value = [](const Vertex &a, const Vertex &b) {
        return a.fx < b.fx;
    };
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    for (int iter = 0; iter < max_iterations; ++iter) {
        if (simplex.back().fx - simplex.front().fx <= tolerance) {
            break;
        }
        std::vector<double> centroid(d, 0.0);
        for (std::size_t v = 0; v < d; ++v) {
            for (std::size_t i = 0; i < d; ++i) {
                centroid[i] += simplex[v].x[i];
            }
        }
        for (double &ci : centroid) {
            ci /= static_cast<double>(d);
        }
        Vertex &worst = simplex[d];
        std::vector<double> reflected(d);
        for (std::size_t i = 0; i < d; ++i) {
            reflected[i] = 2.0 * centroid[i] - worst.x[i];
        }
        const double fr = f(reflected);
        bool shrink = false;
        if (fr < simplex[0].fx) {
            std::vector<double> expanded(d);
            for (std::size_t i = 0; i < d; ++i) {
                expanded[i] = centroid[i] + 2.0 * (reflected[i] - centroid[i]);
            }
            const double fe = f(expanded);
            if (fe < fr) {
                worst = {std::move(expanded), fe};
            } else {
                worst = {std::move(reflected), fr};
            }
        } else if (fr < simplex[d - 1].fx) {
            worst = {std::move(reflected), fr};
        } else if (fr < worst.fx) {
            std::vector<double> contracted(d);
            for (std::size_t i = 0; i < d; ++i) {
                contracted[i] = centroid[i] + 0.5 * (reflected[i] - centroid[i]);
            }
            const double fc = f(contracted);
            if (fc <= fr) {
                worst = {std::move(contracted), fc};
            } else {
                shrink = true;
            }
        } else {
            std::vector<double> contracted(d);
            for (std::size_t i = 0; i < d; ++i) {
                contracted[i] = centroid[i] + 0.5 * (worst.x[i] - centroid[i]);
            }
            const double fc = f(contracted);
            if (fc < worst.fx) {
                worst = {std::move(contracted), fc};
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (std::size_t v = 1; v <= d; ++v) {
                for (std::size_t i = 0; i < d; ++i) {
                    simplex[v].x[i] =
                        simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
                }
                simplex[v].fx = f(simplex[v].x);
            }
        }
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
    }
    return {simplex.front().x, simplex.front().fx};
}

} // namespace detail

/// Multi-start Nelder-Mead over all 4N angles, maximizing the quantum
/// value. Deterministic for a fixed config: per-start generators are
/// seeded from (seed, start), starts reduce by value with lowest-index
/// tie-break, and the winner gets one polishing descent. Failure to
/// violate (value <= 1) is a valid outcome.
template <typename StateT>
inline OptimizationResult optimize_settings(const StateT &state,
                                            const TermMap &terms,
                                            const OptimizerConfig &config = {}) {
    if (config.starts < 1) {
        throw ValidationError("optimizer starts must be positive");
    }
    if (config.max_iterations < 1) {
        throw ValidationError("optimizer max_iterations must be positive");
    }
    if (!(config.tolerance > 0.0)) {
        throw ValidationError("optimizer tolerance must be positive");
    }
    const int n = terms.num_parties;
    if (state.num_qubits != n) {
        throw ValidationError("state qubit count does not match operator "
                              "party count");
    }
    const std::size_t dim = 4 * static_cast<std::size_t>(n);
    const auto objective = [&](const std::vector<double> &x) {
        return -quantum_value(state, terms, detail::unpack_settings(x));
    };
    struct StartResult {
        std::vector<double> x;
        double fx = 0.0;
    };
    std::vector<StartResult> results(config.starts);
    parallel_for_index(
        static_cast<std::size_t>(config.starts), [&](std::size_t s) {
            std::mt19937_64 rng(
                detail::mix64(config.seed + s * 0x9E3779B97F4A7C15ULL));
            std::vector<double> x0(dim);
            for (double &xi : x0) {
                xi = std::numbers::pi * (2.0 * detail::uniform01(rng) - 1.0);
            }
            auto [x, fx] = detail::nelder_mead_minimize(
                objective, std::move(x0), config.max_iterations,
                config.tolerance);
            results[s] = {std::move(x), fx};
        });
    std::size_t best = 0;
    for (std::size_t s = 1; s < results.size(); ++s) {
        if (results[s].fx < results[best].fx) {
            best = s;
        }
    }
    // One polishing descent from the winner; never worse because the start
    // point stays in the simplex.
    auto [x, fx] = detail::nelder_mead_minimize(
        objective, results[best].x, config.max_iterations, config.tolerance);
    OptimizationResult out;
    out.settings = detail::unpack_settings(x);
    out.value = quantum_value(state, terms, out.settings);
    return out;
}

} // namespace bellkit
