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

// Hand-rolled JSON emitters. Numbers print with 17 significant digits so
// every double round-trips exactly; key order and layout are fixed so
// identical inputs give byte-identical output.

#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "bellkit/analysis.hpp"
#include "bellkit/bell_operators.hpp"
#include "bellkit/lhv.hpp"
#include "bellkit/observables.hpp"

namespace bellkit {

/// Shortest representation that round-trips a double: printf %.17g.
inline std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

/// Escapes backslash, quote, and control characters for a JSON string.
inline std::string json_escape(const std::string &raw) {
    std::string out;
    out.reserve(raw.size() + 2);
    for (const char c : raw) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\t':
            out += "\\t";
            break;
        case '\r':
            out += "\\r";
            break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x",
                              static_cast<unsigned>(c));
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

namespace detail {

inline std::string json_or_null(const std::optional<double> &value) {
    return value ? format_double(*value) : "null";
}

inline std::string json_or_null(const std::optional<long long> &value) {
    return value ? std::to_string(*value) : "null";
}

} // namespace detail

/// One settings entry as {"theta1": .., "phi1": .., "theta2": .., "phi2":
/// ..}; 1 is the unprimed observable, 2 the primed one.
inline std::string to_json(const ObserverSettings &s) {
    return "{\"theta1\": " + format_double(s.a.theta) +
           ", \"phi1\": " + format_double(s.a.phi) +
           ", \"theta2\": " + format_double(s.a_prime.theta) +
           ", \"phi2\": " + format_double(s.a_prime.phi) + "}";
}

/// Violation report in the published schema, two-space indent, one
/// settings entry per line.
inline std::string to_json(const ViolationReport &report) {
    std::string out = "{\n";
    out += "  \"state\": \"" + json_escape(report.state_name) + "\",\n";
    out += "  \"n\": " + std::to_string(report.n) + ",\n";
    out += "  \"alpha\": " + detail::json_or_null(report.alpha) + ",\n";
    out += "  \"quantum_value\": " + format_double(report.quantum_value) + ",\n";
    out += "  \"lhv_bound\": " + format_double(report.lhv_bound) + ",\n";
    out +=
        "  \"violation_factor\": " + format_double(report.violation_factor) +
        ",\n";
    out += "  \"settings\": [\n";
    for (std::size_t j = 0; j < report.settings.size(); ++j) {
        out += "    " + to_json(report.settings[j]);
        out += j + 1 < report.settings.size() ? ",\n" : "\n";
    }
    out += "  ],\n";
    out += "  \"method\": \"" + json_escape(report.method) + "\",\n";
    out += "  \"seed\": " + detail::json_or_null(report.seed) + "\n";
    out += "}";
    return out;
}

namespace detail {

inline std::string terms_array_json(const TermMap &terms) {
    std::string out = "  \"terms\": [\n";
    std::size_t emitted = 0;
    for (const auto &[key, coeff] : terms.terms) {
        out += "    {\"key\": [";
        for (std::size_t j = 0; j < key.size(); ++j) {
            out += std::to_string(static_cast<int>(key[j]));
            if (j + 1 < key.size()) {
                out += ", ";
            }
        }
        out += "], \"coeff\": " + format_double(coeff) + "}";
        out += ++emitted < terms.terms.size() ? ",\n" : "\n";
    }
    out += "  ]\n";
    return out;
}

} // namespace detail

/// Term map as {"n": N, "terms": [{"key": [..], "coeff": x}, ..]} in key
/// order.
inline std::string to_json(const TermMap &terms) {
    std::string out = "{\n";
    out += "  \"n\": " + std::to_string(terms.num_parties) + ",\n";
    out += detail::terms_array_json(terms);
    out += "}";
    return out;
}

/// Term map dump plus the stored term count, for CLI inspection.
inline std::string term_map_report_json(const TermMap &terms) {
    std::string out = "{\n";
    out += "  \"n\": " + std::to_string(terms.num_parties) + ",\n";
    out += "  \"term_count\": " + std::to_string(term_count(terms)) + ",\n";
    out += detail::terms_array_json(terms);
    out += "}";
    return out;
}

/// Bound-check report: maximum, witness assignments, and the verdict.
inline std::string to_json(const LhvBoundReport &report) {
    std::string out = "{\n";
    out += "  \"n\": " +
           std::to_string(report.witness.assignments.size()) + ",\n";
    out += "  \"max_value\": " + format_double(report.max_value) + ",\n";
    out += std::string("  \"holds\": ") + (report.holds ? "true" : "false") +
           ",\n";
    out += "  \"witness\": [\n";
    for (std::size_t j = 0; j < report.witness.assignments.size(); ++j) {
        const auto &[va, vap] = report.witness.assignments[j];
        out += "    {\"a\": " + std::to_string(va) +
               ", \"a_prime\": " + std::to_string(vap) + "}";
        out += j + 1 < report.witness.assignments.size() ? ",\n" : "\n";
    }
    out += "  ],\n";
    out += "  \"lhv_bound\": 1\n";
    out += "}";
    return out;
}

} // namespace bellkit
