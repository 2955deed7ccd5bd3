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
 * Two-setting Bell operators for many qubits.
 *
 * A full-correlation operator on M parties is generated by a sign function
 * S(s_1,...,s_M) in {-1,+1}: expanding
 *
 *   (1/2^M) sum_s S(s) sum_{k in {1,2}^M} s_1^{k_1-1}...s_M^{k_M-1}
 *                                         (x)_j O_j(k_j)
 *
 * over measurement choices O_j(1) = A_j, O_j(2) = A'_j yields a sparse map
 * from choice keys to real coefficients (a TermMap). The MABK family is the
 * special case S = sqrt(2) cos[(s_1+...+s_M - M + 1) pi/4].
 *
 * The extended operator appends party N to an (N-1)-party operator:
 *
 *   B = B_{N-1} (x) (A_N + A'_N)/2  +  1_{N-1} (x) (A_N - A'_N)/2
 *
 * so term keys gain a third symbol 0, meaning "party not measured"
 * (identity factor).
 *
 * Index conventions, fixed once and pinned by tests:
 *  - SignTable entry at integer index `i`: bit j of i (bit 0 = least
 *    significant = party 1) encodes s_{j+1} = 1 - 2*bit.
 *  - TermKey entry j (0-based) is the choice of party j+1: 0 = identity,
 *    1 = unprimed A, 2 = primed A'.
 *  - Party 1 owns the most significant block of the operator matrix,
 *    matching the |q_1 q_2 ... q_N> basis order of the state module.
 */

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "bellkit/errors.hpp"
#include "bellkit/linalg.hpp"
#include "bellkit/observables.hpp"

namespace bellkit {

/// Coefficients with |c| at or below this are exact zeros of the generating
/// trigonometry and are dropped from TermMaps.
inline constexpr double kCoefficientPruneTol = 1e-12;

/// A sign function S on M parties, tabulated over all 2^M sign vectors.
struct SignTable {
    int num_parties = 0;
    std::vector<std::int8_t> values; ///< 2^num_parties entries, each +-1
};

/// Measurement-choice key for one correlation term; see the header comment
/// for the index convention.
using TermKey = std::vector<std::uint8_t>;

/// Sparse real-coefficient expansion of a Bell operator over choice keys.
/// std::map keeps iteration (and every serialization) deterministic.
struct TermMap {
    int num_parties = 0;
    std::map<TermKey, double> terms;
};

/// Closed-form MABK coefficients c_0..c_M; c_m belongs to every key with
/// exactly m primed choices.
struct MabkCoefficients {
    int num_parties = 0;
    std::vector<double> c;
};

namespace detail {

/// In-place Walsh-Hadamard transform: data[x] <- sum_y (-1)^{popcount(x&y)}
/// data[y]. Size must be a power of two. Unnormalized.
inline void fwht_inplace(std::vector<double> &data) {
    const std::size_t n = data.size();
    for (std::size_t half = 1; half < n; half *= 2) {
        for (std::size_t block = 0; block < n; block += 2 * half) {
            for (std::size_t i = block; i < block + half; ++i) {
                const double lo = data[i];
                const double hi = data[i + half];
                data[i] = lo + hi;
                data[i + half] = lo - hi;
            }
        }
    }
}

inline void check_party_count(int m, int max, const char *what) {
    if (m < 1 || m > max) {
        throw CapacityError(std::string(what) + ": party count " +
                            std::to_string(m) + " outside 1.." +
                            std::to_string(max));
    }
}

} // namespace detail

/// The MABK sign function S(s) = sqrt(2) cos[(s_1+...+s_M - M + 1) pi/4],
/// which is exactly +-1 at every sign vector. The rounding residual is
/// asserted below 1e-9.
inline SignTable mabk_sign_table(int num_parties) {
    detail::check_party_count(num_parties, kMaxQubits, "mabk_sign_table");
    SignTable table;
    table.num_parties = num_parties;
    table.values.resize(std::size_t{1} << num_parties);
    for (std::size_t idx = 0; idx < table.values.size(); ++idx) {
        // sum_j s_j = M - 2*popcount(idx)
        const int sum = num_parties - 2 * std::popcount(idx);
        const double raw = std::numbers::sqrt2 *
                           std::cos((sum - num_parties + 1) *
                                    std::numbers::pi / 4.0);
        const double rounded = raw >= 0.0 ? 1.0 : -1.0;
        if (std::abs(raw - rounded) > 1e-9) {
            throw ValidationError("MABK sign value " + std::to_string(raw) +
                                  " is not within 1e-9 of +-1");
        }
        table.values[idx] = static_cast<std::int8_t>(rounded);
    }
    return table;
}

/// Reads a sign table as 2^M whitespace-separated +1/-1 entries in the
/// documented index order; M is inferred from the entry count.
inline SignTable parse_sign_table(std::istream &in) {
    std::vector<std::int8_t> values;
    long v = 0;
    while (in >> v) {
        if (v != 1 && v != -1) {
            throw ValidationError("sign table entries must be +1 or -1, got " +
                                  std::to_string(v));
        }
        values.push_back(static_cast<std::int8_t>(v));
    }
    if (!in.eof()) {
        throw ValidationError("sign table contains a non-numeric token");
    }
    const std::size_t n = values.size();
    if (n < 2 || (n & (n - 1)) != 0) {
        throw ValidationError("sign table needs 2^M entries (M >= 1), got " +
                              std::to_string(n));
    }
    SignTable table;
    table.num_parties = std::countr_zero(n);
    if (table.num_parties > kMaxQubits) {
        throw CapacityError("sign table party count exceeds cap");
    }
    table.values = std::move(values);
    return table;
}

/// Closed-form c_m = 2^{(1-M)/2} cos[(2m - M + 1) pi/4], m = 0..M.
inline MabkCoefficients mabk_coefficients(int num_parties) {
    detail::check_party_count(num_parties, kMaxQubits, "mabk_coefficients");
    MabkCoefficients out;
    out.num_parties = num_parties;
    out.c.resize(num_parties + 1);
    const double scale = std::pow(2.0, (1.0 - num_parties) / 2.0);
    for (int m = 0; m <= num_parties; ++m) {
        out.c[m] =
            scale * std::cos((2 * m - num_parties + 1) * std::numbers::pi / 4.0);
    }
    return out;
}

/// Expands a sign table into its correlation-term map: coefficient(k) =
/// 2^{-M} sum_s S(s) prod_j s_j^{k_j - 1} for every key k in {1,2}^M.
/// Near-zero coefficients are pruned; keys containing 0 never appear.
///
/// The character sum over s is a Walsh-Hadamard transform of the table, with
/// the primed positions of k as the transform index.
inline TermMap wwzb_terms(const SignTable &table) {
    const int m = table.num_parties;
    detail::check_party_count(m, kMaxQubits, "wwzb_terms");
    if (table.values.size() != (std::size_t{1} << m)) {
        throw ValidationError("sign table length must be 2^num_parties");
    }
    std::vector<double> spectrum(table.values.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const std::int8_t v = table.values[i];
        if (v != 1 && v != -1) {
            throw ValidationError("sign table entries must be +1 or -1");
        }
        spectrum[i] = static_cast<double>(v);
    }
    detail::fwht_inplace(spectrum);

    const double norm = std::ldexp(1.0, -m); // exact 2^{-M}
    TermMap out;
    out.num_parties = m;
    for (std::size_t mask = 0; mask < spectrum.size(); ++mask) {
        const double coeff = spectrum[mask] * norm;
        if (std::abs(coeff) <= kCoefficientPruneTol) {
            continue;
        }
        TermKey key(m);
        for (int j = 0; j < m; ++j) {
            key[j] = ((mask >> j) & 1U) ? 2 : 1;
        }
        out.terms.emplace(std::move(key), coeff);
    }
    return out;
}

/// Appends one party: every inner term (k, c) spawns (k||1, c/2) and
/// (k||2, c/2), plus the single-party terms (0..0,1): +1/2 and (0..0,2): -1/2.
inline TermMap extended_terms(const TermMap &inner) {
    if (inner.num_parties < 2) {
        throw ValidationError("extended_terms needs an inner operator on at "
                              "least 2 parties");
    }
    TermMap out;
    out.num_parties = inner.num_parties + 1;
    for (const auto &[key, coeff] : inner.terms) {
        const double half = coeff / 2.0;
        if (std::abs(half) <= kCoefficientPruneTol) {
            continue;
        }
        TermKey unprimed = key;
        unprimed.push_back(1);
        TermKey primed = key;
        primed.push_back(2);
        out.terms.emplace(std::move(unprimed), half);
        out.terms.emplace(std::move(primed), half);
    }
    TermKey id_unprimed(static_cast<std::size_t>(inner.num_parties), 0);
    id_unprimed.push_back(1);
    TermKey id_primed(static_cast<std::size_t>(inner.num_parties), 0);
    id_primed.push_back(2);
    out.terms.emplace(std::move(id_unprimed), 0.5);
    out.terms.emplace(std::move(id_primed), -0.5);
    return out;
}

/// The extended MABK operator on `num_parties` qubits (MABK inner operator
/// on num_parties - 1).
inline TermMap extended_mabk_terms(int num_parties) {
    if (num_parties < 3) {
        throw ValidationError("extended MABK operator needs at least 3 parties");
    }
    if (num_parties > kMaxQubits) {
        throw CapacityError("party count " + std::to_string(num_parties) +
                            " exceeds cap " + std::to_string(kMaxQubits));
    }
    return extended_terms(wwzb_terms(mabk_sign_table(num_parties - 1)));
}

/// Dense matrix sum_k c_k (x)_j M_j(k_j) with M_j(0) = I, M_j(1) = a_j.sigma,
/// M_j(2) = a'_j.sigma. Party 1 is the leftmost Kronecker factor.
inline ComplexMatrix
build_operator_matrix(const TermMap &terms,
                      const std::vector<ObserverSettings> &settings) {
    const int n = terms.num_parties;
    if (static_cast<int>(settings.size()) != n) {
        throw ValidationError("settings count " +
                              std::to_string(settings.size()) +
                              " does not match party count " +
                              std::to_string(n));
    }
    if (n < 1 || n > kMaxQubits) {
        throw CapacityError("party count " + std::to_string(n) +
                            " exceeds dense cap " + std::to_string(kMaxQubits));
    }
    std::vector<std::array<ComplexMatrix, 3>> local(n);
    for (int j = 0; j < n; ++j) {
        local[j] = {identity2(), bloch_observable(settings[j].a),
                    bloch_observable(settings[j].a_prime)};
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    ComplexMatrix result = ComplexMatrix::Zero(dim, dim);
    for (const auto &[key, coeff] : terms.terms) {
        ComplexMatrix acc = ComplexMatrix::Constant(1, 1, Complex(coeff, 0.0));
        for (int j = 0; j < n; ++j) {
            acc = kron(acc, local[j][key[j]]);
        }
        result += acc;
    }
    require_hermitian(result);
    return result;
}

/// Number of stored (unpruned) terms.
inline std::size_t term_count(const TermMap &terms) {
    return terms.terms.size();
}

} // namespace bellkit
