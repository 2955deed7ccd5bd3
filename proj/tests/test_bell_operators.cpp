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

#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bellkit/bellkit.hpp"

using namespace bellkit;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = std::numbers::pi;

SignTable random_sign_table(int m, std::mt19937_64 &rng) {
    SignTable table;
    table.num_parties = m;
    table.values.resize(std::size_t{1} << m);
    for (auto &v : table.values) {
        v = rng() & 1U ? 1 : -1;
    }
    return table;
}

std::vector<ObserverSettings> random_settings(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::vector<ObserverSettings> s(n);
    for (auto &os : s) {
        os.a = Observable{angle(rng), angle(rng)};
        os.a_prime = Observable{angle(rng), angle(rng)};
    }
    return s;
}

const std::vector<ObserverSettings> kXYSettings = {
    {{kPi / 2, 0.0}, {kPi / 2, kPi / 2}},
    {{kPi / 2, 0.0}, {kPi / 2, kPi / 2}},
};

} // namespace

TEST_CASE("mabk_sign_table reproduces the small patterns") {
    const SignTable chsh = mabk_sign_table(2);
    REQUIRE(chsh.num_parties == 2);
    // Index order (+1,+1), (-1,+1), (+1,-1), (-1,-1).
    REQUIRE(chsh.values == std::vector<std::int8_t>{1, 1, 1, -1});

    const SignTable single = mabk_sign_table(1);
    REQUIRE(single.values == std::vector<std::int8_t>{1, 1});

    // s = (-1,-1,-1) lives at index 7; sum s = -3 gives argument -5 pi/4.
    const SignTable mermin = mabk_sign_table(3);
    REQUIRE(mermin.values[7] == -1);
}

TEST_CASE("mabk_sign_table enforces the party cap") {
    REQUIRE_THROWS_AS(mabk_sign_table(0), CapacityError);
    REQUIRE_THROWS_AS(mabk_sign_table(13), CapacityError);
}

TEST_CASE("mabk_coefficients closed form on small cases") {
    const MabkCoefficients two = mabk_coefficients(2);
    REQUIRE(two.c.size() == 3);
    REQUIRE_THAT(two.c[0], WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(two.c[1], WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(two.c[2], WithinAbs(-0.5, 1e-12));

    const MabkCoefficients three = mabk_coefficients(3);
    REQUIRE_THAT(three.c[0], WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(three.c[1], WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(three.c[2], WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(three.c[3], WithinAbs(-0.5, 1e-12));

    const MabkCoefficients one = mabk_coefficients(1);
    REQUIRE_THAT(one.c[0], WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(one.c[1], WithinAbs(0.0, 1e-12));
}

TEST_CASE("wwzb_terms expands the CHSH and Mermin tables") {
    const TermMap chsh = wwzb_terms(mabk_sign_table(2));
    REQUIRE(term_count(chsh) == 4);
    REQUIRE(chsh.terms.at({1, 1}) == 0.5);
    REQUIRE(chsh.terms.at({2, 1}) == 0.5);
    REQUIRE(chsh.terms.at({1, 2}) == 0.5);
    REQUIRE(chsh.terms.at({2, 2}) == -0.5);

    // Exactly the keys with an odd number of primed entries survive.
    const TermMap mermin = wwzb_terms(mabk_sign_table(3));
    REQUIRE(term_count(mermin) == 4);
    REQUIRE(mermin.terms.at({1, 1, 2}) == 0.5);
    REQUIRE(mermin.terms.at({1, 2, 1}) == 0.5);
    REQUIRE(mermin.terms.at({2, 1, 1}) == 0.5);
    REQUIRE(mermin.terms.at({2, 2, 2}) == -0.5);
}

TEST_CASE("wwzb_terms of the constant table keeps a single term") {
    SignTable constant;
    constant.num_parties = 2;
    constant.values = {1, 1, 1, 1};
    const TermMap terms = wwzb_terms(constant);
    REQUIRE(term_count(terms) == 1);
    REQUIRE(terms.terms.at({1, 1}) == 1.0);
}

TEST_CASE("wwzb_terms validates its table") {
    SignTable bad;
    bad.num_parties = 2;
    bad.values = {1, 1, 1}; // wrong length
    REQUIRE_THROWS_AS(wwzb_terms(bad), ValidationError);
    bad.values = {1, 1, 1, 2}; // not a sign
    REQUIRE_THROWS_AS(wwzb_terms(bad), ValidationError);
}

TEST_CASE("MABK coefficients match the expanded sign table") {
    for (int m = 2; m <= 8; ++m) {
        const MabkCoefficients closed = mabk_coefficients(m);
        const TermMap expanded = wwzb_terms(mabk_sign_table(m));
        for (const auto &[key, coeff] : expanded.terms) {
            int primed = 0;
            for (const auto k : key) {
                primed += k == 2;
            }
            REQUIRE_THAT(coeff, WithinAbs(closed.c[primed], 1e-12));
        }
        // Pruned keys must correspond to vanishing closed-form entries.
        std::size_t expected = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            expected +=
                std::abs(closed.c[std::popcount(mask)]) > kCoefficientPruneTol;
        }
        REQUIRE(term_count(expanded) == expected);
    }
}

TEST_CASE("extended_terms applies the appending rule") {
    const TermMap chsh = wwzb_terms(mabk_sign_table(2));
    const TermMap ext = extended_terms(chsh);
    REQUIRE(ext.num_parties == 3);
    REQUIRE(term_count(ext) == 10);
    REQUIRE(ext.terms.at({1, 1, 1}) == 0.25);
    REQUIRE(ext.terms.at({2, 2, 2}) == -0.25);
    REQUIRE(ext.terms.at({0, 0, 1}) == 0.5);
    REQUIRE(ext.terms.at({0, 0, 2}) == -0.5);

    TermMap single;
    single.num_parties = 2;
    single.terms.emplace(TermKey{1, 1}, 1.0);
    const TermMap ext_single = extended_terms(single);
    REQUIRE(term_count(ext_single) == 4);
    REQUIRE(ext_single.terms.at({1, 1, 1}) == 0.5);
    REQUIRE(ext_single.terms.at({1, 1, 2}) == 0.5);
    REQUIRE(ext_single.terms.at({0, 0, 1}) == 0.5);
    REQUIRE(ext_single.terms.at({0, 0, 2}) == -0.5);
}

TEST_CASE("extended_terms needs at least two inner parties") {
    TermMap tiny;
    tiny.num_parties = 1;
    tiny.terms.emplace(TermKey{1}, 1.0);
    REQUIRE_THROWS_AS(extended_terms(tiny), ValidationError);
}

TEST_CASE("term_count grows as 2^(N-1)+2 on even party counts") {
    REQUIRE(term_count(extended_mabk_terms(3)) == 10);
    REQUIRE(term_count(extended_mabk_terms(4)) == 10);
    REQUIRE(term_count(extended_mabk_terms(5)) == 34);
    REQUIRE(term_count(extended_mabk_terms(6)) == 34);
    REQUIRE(term_count(extended_mabk_terms(7)) == 130);
    REQUIRE(term_count(extended_mabk_terms(8)) == 130);
}

TEST_CASE("build_operator_matrix passes single factors through") {
    TermMap passthrough;
    passthrough.num_parties = 1;
    passthrough.terms.emplace(TermKey{1}, 1.0);
    const std::vector<ObserverSettings> settings = {{{0.0, 0.0}, {0.0, 0.0}}};
    REQUIRE((build_operator_matrix(passthrough, settings) - pauli_z())
                .cwiseAbs()
                .maxCoeff() <= 1e-15);
}

TEST_CASE("CHSH/2 at the x/y settings reaches sqrt(2)") {
    const ComplexMatrix b =
        build_operator_matrix(wwzb_terms(mabk_sign_table(2)), kXYSettings);
    REQUIRE_THAT(hermitian_max_abs_eigenvalue(b),
                 WithinAbs(std::numbers::sqrt2, 1e-8));
}

TEST_CASE("build_operator_matrix validates the settings count") {
    REQUIRE_THROWS_AS(
        build_operator_matrix(extended_mabk_terms(3), kXYSettings),
        ValidationError);
}

TEST_CASE("built operators are traceless") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 3);
        const TermMap terms = extended_terms(wwzb_terms(random_sign_table(m, rng)));
        const ComplexMatrix b =
            build_operator_matrix(terms, random_settings(m + 1, rng));
        REQUIRE(std::abs(b.trace()) <= 1e-9);
    }
}

TEST_CASE("equal settings on the last party collapse to a tensor factor") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 3);
        const TermMap inner = wwzb_terms(random_sign_table(m, rng));
        const TermMap ext = extended_terms(inner);

        std::vector<ObserverSettings> settings = random_settings(m, rng);
        const Observable last{angle(rng), angle(rng)};
        settings.push_back({last, last});

        const ComplexMatrix whole = build_operator_matrix(ext, settings);
        const ComplexMatrix factor = kron(
            build_operator_matrix(
                inner, {settings.begin(), settings.begin() + m}),
            bloch_observable(last));
        REQUIRE((whole - factor).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("the squared operator splits along the last party") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 3); // N = m + 1 <= 5
        const TermMap inner = wwzb_terms(random_sign_table(m, rng));
        const TermMap ext = extended_terms(inner);
        const auto settings = random_settings(m + 1, rng);

        const ComplexMatrix b = build_operator_matrix(ext, settings);
        const ComplexMatrix inner_b = build_operator_matrix(
            inner, {settings.begin(), settings.begin() + m});
        const double dot =
            bloch_dot(settings[m].a, settings[m].a_prime);
        const Eigen::Index inner_dim = inner_b.rows();
        const ComplexMatrix expected =
            kron(inner_b * inner_b,
                 0.5 * (1.0 + dot) * ComplexMatrix::Identity(2, 2)) +
            kron(ComplexMatrix::Identity(inner_dim, inner_dim),
                 0.5 * (1.0 - dot) * ComplexMatrix::Identity(2, 2));
        REQUIRE((b * b - expected).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("sign-table operators never exceed the spectral envelope") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 15; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 3);
        const ComplexMatrix b = build_operator_matrix(
            wwzb_terms(random_sign_table(m, rng)), random_settings(m, rng));
        REQUIRE(hermitian_max_abs_eigenvalue(b) <=
                std::pow(2.0, (m - 1) / 2.0) + 1e-8);
    }
}

TEST_CASE("parse_sign_table reads whitespace-separated signs") {
    std::istringstream good("1 -1  1\n1");
    const SignTable table = parse_sign_table(good);
    REQUIRE(table.num_parties == 2);
    REQUIRE(table.values == std::vector<std::int8_t>{1, -1, 1, 1});

    std::istringstream bad_value("1 2 1 1");
    REQUIRE_THROWS_AS(parse_sign_table(bad_value), ValidationError);

    std::istringstream bad_token("1 -1 x 1");
    REQUIRE_THROWS_AS(parse_sign_table(bad_token), ValidationError);

    std::istringstream bad_count("1 -1 1");
    REQUIRE_THROWS_AS(parse_sign_table(bad_count), ValidationError);

    std::istringstream empty("");
    REQUIRE_THROWS_AS(parse_sign_table(empty), ValidationError);
}

TEST_CASE("extended_mabk_terms validates the party count") {
    REQUIRE_THROWS_AS(extended_mabk_terms(2), ValidationError);
    REQUIRE_THROWS_AS(extended_mabk_terms(13), CapacityError);
}
