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

#include <numbers>
#include <random>

#include "bellkit/bellkit.hpp"

using namespace bellkit;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix random_2x2(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix m(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m(i, j) = Complex(dist(rng), dist(rng));
        }
    }
    return m;
}

} // namespace

TEST_CASE("kron reproduces hand-expanded products") {
    const ComplexMatrix i2 = identity2();
    REQUIRE(kron(i2, i2).isApprox(ComplexMatrix::Identity(4, 4)));

    const ComplexMatrix sx = pauli_x();
    const ComplexMatrix sz = pauli_z();
    const ComplexMatrix xz = kron(sx, sz);
    REQUIRE(xz.rows() == 4);
    // [[0, sz], [sz, 0]]
    REQUIRE(xz.block(0, 0, 2, 2).isZero(0.0));
    REQUIRE(xz.block(0, 2, 2, 2).isApprox(sz));
    REQUIRE(xz.block(2, 0, 2, 2).isApprox(sz));
    REQUIRE(xz.block(2, 2, 2, 2).isZero(0.0));

    const ComplexMatrix zz = kron(sz, sz);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = 1.0;
    expected(1, 1) = -1.0;
    expected(2, 2) = -1.0;
    expected(3, 3) = 1.0;
    REQUIRE(zz.isApprox(expected));
}

TEST_CASE("kron is associative on random factors") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = random_2x2(rng);
        const ComplexMatrix b = random_2x2(rng);
        const ComplexMatrix c = random_2x2(rng);
        const ComplexMatrix left = kron(kron(a, b), c);
        const ComplexMatrix right = kron(a, kron(b, c));
        REQUIRE((left - right).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("kron rejects results beyond the dimension cap") {
    const ComplexMatrix big = ComplexMatrix::Identity(128, 128);
    const ComplexMatrix mid = ComplexMatrix::Identity(64, 64);
    REQUIRE_THROWS_AS(kron(big, mid), CapacityError);
}

TEST_CASE("hermitian_max_abs_eigenvalue on known spectra") {
    REQUIRE_THAT(hermitian_max_abs_eigenvalue(pauli_z()), WithinAbs(1.0, 1e-12));
    const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(4, 4);
    REQUIRE_THAT(hermitian_max_abs_eigenvalue(half), WithinAbs(0.5, 1e-12));

    // Three-party extended operator at the canonical settings reaches
    // sqrt(2).
    const ComplexMatrix b = build_operator_matrix(
        extended_mabk_terms(3),
        canonical_gghz_settings(3, std::numbers::pi / 4.0));
    REQUIRE_THAT(hermitian_max_abs_eigenvalue(b),
                 WithinAbs(std::numbers::sqrt2, 1e-8));
}

TEST_CASE("hermitian_max_abs_eigenvalue rejects non-Hermitian input") {
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    REQUIRE(!is_hermitian(bad));
    REQUIRE_THROWS_AS(hermitian_max_abs_eigenvalue(bad), ValidationError);
}

TEST_CASE("extremal eigenpair residual stays below 1e-8") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (const int dim : {8, 32, 64}) {
        ComplexMatrix a(dim, dim);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                a(i, j) = Complex(dist(rng), dist(rng));
            }
        }
        const ComplexMatrix h = a + a.adjoint();
        const double top = hermitian_max_abs_eigenvalue(h);

        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
        const auto &evs = solver.eigenvalues();
        const Eigen::Index which =
            std::abs(evs(0)) > std::abs(evs(dim - 1)) ? 0 : dim - 1;
        const double lambda = evs(which);
        const ComplexVector v = solver.eigenvectors().col(which);
        REQUIRE((h * v - lambda * v).norm() <= 1e-8 * h.norm());
        REQUIRE_THAT(top, WithinAbs(std::abs(lambda), 1e-10));

        // Independent route: power iteration on H^2 converges to top^2.
        ComplexMatrix h2 = h * h;
        ComplexVector x = ComplexVector::Ones(dim).normalized();
        for (int it = 0; it < 300; ++it) {
            x = (h2 * x).normalized();
        }
        const double rayleigh = (x.adjoint() * h2 * x)(0, 0).real();
        REQUIRE_THAT(std::sqrt(rayleigh), WithinAbs(top, 1e-6 * (1.0 + top)));
    }
}

TEST_CASE("trace_product pairs states with observables") {
    ComplexMatrix ket0 = ComplexMatrix::Zero(2, 2);
    ket0(0, 0) = 1.0;
    REQUIRE_THAT(trace_product(ket0, pauli_z()), WithinAbs(1.0, 1e-12));

    const ComplexMatrix mixed = 0.5 * ComplexMatrix::Identity(2, 2);
    REQUIRE_THAT(trace_product(mixed, pauli_x()), WithinAbs(0.0, 1e-12));

    const StateVector ghz = generalized_ghz(3, std::numbers::pi / 4.0);
    const ComplexMatrix b = build_operator_matrix(
        extended_mabk_terms(3),
        canonical_gghz_settings(3, std::numbers::pi / 4.0));
    REQUIRE_THAT(trace_product(density_matrix(ghz).matrix, b),
                 WithinAbs(std::numbers::sqrt2, 1e-8));
}

TEST_CASE("trace_product validates dimensions and realness") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix i4 = ComplexMatrix::Identity(4, 4);
    REQUIRE_THROWS_AS(trace_product(i2, i4), ValidationError);

    // Tr(a b) = i for these non-Hermitian inputs; the realness check fires.
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = Complex(0.0, 1.0);
    ComplexMatrix b = ComplexMatrix::Zero(2, 2);
    b(1, 0) = 1.0;
    REQUIRE_THROWS_AS(trace_product(a, b), ValidationError);
}

TEST_CASE("trace_product is cyclic under observable conjugation") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                                 std::numbers::pi);
    for (int trial = 0; trial < 20; ++trial) {
        // Bloch observables are Hermitian involutions, so U = U^dagger.
        const ComplexMatrix u = kron(bloch_observable(angle(rng), angle(rng)),
                                     bloch_observable(angle(rng), angle(rng)));
        const StateVector psi = generalized_ghz(2, angle(rng));
        const ComplexMatrix rho = psi.amplitudes * psi.amplitudes.adjoint();
        const ComplexMatrix b = kron(bloch_observable(angle(rng), angle(rng)),
                                     bloch_observable(angle(rng), angle(rng)));
        const double lhs = trace_product(rho, u * b * u);
        const double rhs = trace_product(u * rho * u, b);
        REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-9));
    }
}

TEST_CASE("hermiticity helpers agree with each other") {
    REQUIRE(hermiticity_defect(pauli_y()) == 0.0);
    REQUIRE(is_hermitian(pauli_y()));

    ComplexMatrix off = pauli_y();
    off(0, 1) += Complex(0.0, 2e-9);
    REQUIRE(hermiticity_defect(off) > kHermitianTol);
    REQUIRE(!is_hermitian(off));
    REQUIRE_THROWS_AS(require_hermitian(off), ValidationError);

    const ComplexMatrix rect = ComplexMatrix::Zero(2, 3);
    REQUIRE(!is_hermitian(rect));
}
