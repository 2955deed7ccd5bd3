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
 * Exhaustive local-hidden-variable bounds.
 *
 * The LHV value of a correlation operator is affine in the hidden-variable
 * distribution, so its extrema over all local models are attained at
 * deterministic strategies: each party fixes both outcomes v_A, v_A' in
 * {-1,+1} in advance. The bound is therefore the exact maximum of
 * |lhv_value| over 4^N assignments.
 *
 * Enumeration encoding: strategy index b has 2N bits; bit 2j set means
 * party j+1 answers -1 for the unprimed choice, bit 2j+1 likewise for the
 * primed choice. A term with key k contributes c_k (-1)^{popcount(mask_k &
 * b)} where mask_k sets bit 2j for k_j = 1 and bit 2j+1 for k_j = 2. All
 * 4^N strategy values are then one Walsh-Hadamard transform of the
 * coefficients scattered by mask. Coefficients of sign-table operators are
 * dyadic rationals, so the transform is exact in double precision.
 *
 * Above 8 parties the value table is too large for one buffer; the sharded
 * mode fixes the low 16 strategy bits (parties 1..8) as the transform
 * domain and iterates the remaining high bits as independent shards. Shard
 * results are reduced in shard order, so the outcome is bit-identical for
 * any thread count.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bellkit/bell_operators.hpp"
#include "bellkit/errors.hpp"
#include "bellkit/parallel.hpp"

namespace bellkit {

/// Predetermined outcomes for every party: assignments[j] = (v_A, v_A') of
/// party j+1, each value exactly +1 or -1.
struct DeterministicStrategy {
    std::vector<std::pair<int, int>> assignments;
};

/// Absolute tolerance for declaring the unit LHV bound satisfied.
inline constexpr double kLhvBoundTol = 1e-9;

namespace detail {

inline int checked_lhv_party_count(const TermMap &terms) {
    const int n = terms.num_parties;
    if (n < 1) {
        throw ValidationError("term map has no parties");
    }
    return n;
}

/// Strategy bitmask of a term key (see header comment).
inline std::uint64_t term_strategy_mask(const TermKey &key) {
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < key.size(); ++j) {
        if (key[j] == 1) {
            mask |= std::uint64_t{1} << (2 * j);
        } else if (key[j] == 2) {
            mask |= std::uint64_t{1} << (2 * j + 1);
        }
    }
    return mask;
}

inline DeterministicStrategy decode_strategy(std::uint64_t index,
                                             int num_parties) {
    DeterministicStrategy s;
    s.assignments.reserve(num_parties);
    for (int j = 0; j < num_parties; ++j) {
        const int v_a = (index >> (2 * j)) & 1U ? -1 : 1;
        const int v_ap = (index >> (2 * j + 1)) & 1U ? -1 : 1;
        s.assignments.emplace_back(v_a, v_ap);
    }
    return s;
}

/// Scans a value table for the largest |value|; ties resolve to the lowest
/// index. Returns (max_abs, argmax offset).
inline std::pair<double, std::uint64_t>
scan_max_abs(const std::vector<double> &values) {
    double best = -1.0;
    std::uint64_t arg = 0;
    for (std::uint64_t i = 0; i < values.size(); ++i) {
        const double a = std::abs(values[i]);
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    return {best, arg};
}

/// All strategy values for one shard: strategies b = (shard << low_bits) |
/// low. Exact for dyadic coefficients.
inline std::vector<double> shard_strategy_values(const TermMap &terms,
                                                 std::uint64_t shard,
                                                 int low_bits) {
    std::vector<double> buffer(std::size_t{1} << low_bits, 0.0);
    const std::uint64_t low_mask = (std::uint64_t{1} << low_bits) - 1;
    for (const auto &[key, coeff] : terms.terms) {
        const std::uint64_t mask = term_strategy_mask(key);
        const double sign =
            std::popcount((mask >> low_bits) & shard) % 2 == 0 ? 1.0 : -1.0;
        buffer[mask & low_mask] += sign * coeff;
    }
    fwht_inplace(buffer);
    return buffer;
}

} // namespace detail

/// Value of the operator under one deterministic strategy:
/// sum_k c_k prod_j v_j(k_j) with v_j(0) = 1.
inline double lhv_value(const TermMap &terms,
                        const DeterministicStrategy &strategy) {
    const int n = detail::checked_lhv_party_count(terms);
    if (static_cast<int>(strategy.assignments.size()) != n) {
        throw ValidationError("strategy length " +
                              std::to_string(strategy.assignments.size()) +
                              " does not match party count " +
                              std::to_string(n));
    }
    for (const auto &[va, vap] : strategy.assignments) {
        if ((va != 1 && va != -1) || (vap != 1 && vap != -1)) {
            throw ValidationError("strategy values must be exactly +1 or -1");
        }
    }
    double total = 0.0;
    for (const auto &[key, coeff] : terms.terms) {
        double prod = coeff;
        for (int j = 0; j < n; ++j) {
            if (key[j] == 1) {
                prod *= strategy.assignments[j].first;
            } else if (key[j] == 2) {
                prod *= strategy.assignments[j].second;
            }
        }
        total += prod;
    }
    return total;
}

/// Exact maximum of |lhv_value| over all 4^N strategies, single buffer.
/// Capped at 8 parties; larger operators must use lhv_max_sharded.
inline double lhv_max(const TermMap &terms) {
    const int n = detail::checked_lhv_party_count(terms);
    if (n > kLhvExhaustiveMaxParties) {
        throw CapacityError(
            "exhaustive mode enumerates 4^N strategies and is capped at " +
            std::to_string(kLhvExhaustiveMaxParties) +
            " parties; use lhv_max_sharded for up to " +
            std::to_string(kMaxQubits));
    }
    const auto values = detail::shard_strategy_values(terms, 0, 2 * n);
    return detail::scan_max_abs(values).first;
}

/// Sharded exhaustive maximum for up to 12 parties: 4^{N-8} independent
/// shards over the high strategy bits, max-reduced in shard order. Equals
/// lhv_max bit for bit where both apply.
inline double lhv_max_sharded(const TermMap &terms,
                              int num_threads = effective_thread_count()) {
    const int n = detail::checked_lhv_party_count(terms);
    if (n > kMaxQubits) {
        throw CapacityError("party count " + std::to_string(n) +
                            " exceeds cap " + std::to_string(kMaxQubits));
    }
    const int low_bits = std::min(2 * n, 2 * kLhvExhaustiveMaxParties);
    const std::uint64_t num_shards = std::uint64_t{1} << (2 * n - low_bits);
    std::vector<double> shard_max(num_shards);
    parallel_for_index(
        num_shards,
        [&](std::size_t shard) {
            const auto values =
                detail::shard_strategy_values(terms, shard, low_bits);
            shard_max[shard] = detail::scan_max_abs(values).first;
        },
        num_threads);
    double best = 0.0;
    for (const double v : shard_max) {
        best = std::max(best, v);
    }
    return best;
}

/// Outcome of an exhaustive bound check. witness attains |lhv_value| =
/// max_value (lowest strategy index on ties).
struct LhvBoundReport {
    double max_value = 0.0;
    DeterministicStrategy witness;
    bool holds = false; ///< max_value <= 1 + kLhvBoundTol
};

/// Enumerates all strategies, reporting the maximum, a witness attaining
/// it, and whether the unit bound holds. Same capacity rules as lhv_max.
inline LhvBoundReport verify_bound(const TermMap &terms) {
    const int n = detail::checked_lhv_party_count(terms);
    if (n > kLhvExhaustiveMaxParties) {
        throw CapacityError(
            "exhaustive mode enumerates 4^N strategies and is capped at " +
            std::to_string(kLhvExhaustiveMaxParties) +
            " parties; use verify_bound_sharded for up to " +
            std::to_string(kMaxQubits));
    }
    const auto values = detail::shard_strategy_values(terms, 0, 2 * n);
    const auto [best, arg] = detail::scan_max_abs(values);
    LhvBoundReport report;
    report.max_value = best;
    report.witness = detail::decode_strategy(arg, n);
    report.holds = best <= 1.0 + kLhvBoundTol;
    return report;
}

/// Sharded verify_bound for up to 12 parties. The witness is the lowest
/// strategy index attaining the maximum, independent of thread count.
inline LhvBoundReport
verify_bound_sharded(const TermMap &terms,
                     int num_threads = effective_thread_count()) {
    const int n = detail::checked_lhv_party_count(terms);
    if (n > kMaxQubits) {
        throw CapacityError("party count " + std::to_string(n) +
                            " exceeds cap " + std::to_string(kMaxQubits));
    }
    const int low_bits = std::min(2 * n, 2 * kLhvExhaustiveMaxParties);
    const std::uint64_t num_shards = std::uint64_t{1} << (2 * n - low_bits);
    std::vector<std::pair<double, std::uint64_t>> shard_best(num_shards);
    parallel_for_index(
        num_shards,
        [&](std::size_t shard) {
            const auto values =
                detail::shard_strategy_values(terms, shard, low_bits);
            shard_best[shard] = detail::scan_max_abs(values);
        },
        num_threads);
    double best = -1.0;
    std::uint64_t arg = 0;
    for (std::uint64_t shard = 0; shard < num_shards; ++shard) {
        if (shard_best[shard].first > best) {
            best = shard_best[shard].first;
            arg = (shard << low_bits) | shard_best[shard].second;
        }
    }
    LhvBoundReport report;
    report.max_value = best;
    report.witness = detail::decode_strategy(arg, n);
    report.holds = best <= 1.0 + kLhvBoundTol;
    return report;
}

} // namespace bellkit
