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

// Named multi-qubit state families. Basis order is |q_1 q_2 ... q_N> with
// q_1 the most significant bit of the amplitude index, matching the tensor
// slot order used by the operator builder (party 1 = leftmost factor).

#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "bellkit/errors.hpp"
#include "bellkit/linalg.hpp"

namespace bellkit {

/// Pure state: 2^num_qubits amplitudes, unit norm within 1e-12.
struct StateVector {
    int num_qubits = 0;
    ComplexVector amplitudes;
};

/// Mixed state: Hermitian, unit trace within 1e-12, eigenvalues above
/// -1e-10.
struct DensityMatrix {
    int num_qubits = 0;
    ComplexMatrix matrix;
};

inline constexpr double kStateNormTol = 1e-12;

namespace detail {

inline Eigen::Index checked_state_dim(int num_qubits, const char *what) {
    if (num_qubits < 2) {
        throw ValidationError(std::string(what) + ": need at least 2 qubits");
    }
    if (num_qubits > kMaxQubits) {
        throw CapacityError(std::string(what) + ": qubit count " +
                            std::to_string(num_qubits) + " exceeds cap " +
                            std::to_string(kMaxQubits));
    }
    return Eigen::Index{1} << num_qubits;
}

} // namespace detail

/// cos(alpha)|0...0> + sin(alpha)|1...1>; the GHZ state at alpha = pi/4.
inline StateVector generalized_ghz(int num_qubits, double alpha) {
    const Eigen::Index dim = detail::checked_state_dim(num_qubits, "generalized_ghz");
    StateVector psi;
    psi.num_qubits = num_qubits;
    psi.amplitudes = ComplexVector::Zero(dim);
    psi.amplitudes(0) = Complex(std::cos(alpha), 0.0);
    psi.amplitudes(dim - 1) = Complex(std::sin(alpha), 0.0);
    return psi;
}

/// Equal superposition of all weight-1 basis states, amplitude 1/sqrt(N).
inline StateVector w_state(int num_qubits) {
    const Eigen::Index dim = detail::checked_state_dim(num_qubits, "w_state");
    StateVector psi;
    psi.num_qubits = num_qubits;
    psi.amplitudes = ComplexVector::Zero(dim);
    const double amp = 1.0 / std::sqrt(static_cast<double>(num_qubits));
    for (int j = 0; j < num_qubits; ++j) {
        psi.amplitudes(Eigen::Index{1} << j) = Complex(amp, 0.0);
    }
    return psi;
}

/// The four-qubit linear cluster state
/// (|0000> + |0011> + |1100> - |1111>)/2.
inline StateVector cluster4() {
    StateVector psi;
    psi.num_qubits = 4;
    psi.amplitudes = ComplexVector::Zero(16);
    psi.amplitudes(0b0000) = Complex(0.5, 0.0);
    psi.amplitudes(0b0011) = Complex(0.5, 0.0);
    psi.amplitudes(0b1100) = Complex(0.5, 0.0);
    psi.amplitudes(0b1111) = Complex(-0.5, 0.0);
    return psi;
}

/// Projector |psi><psi| of a pure state.
inline DensityMatrix density_matrix(const StateVector &psi) {
    DensityMatrix rho;
    rho.num_qubits = psi.num_qubits;
    rho.matrix = psi.amplitudes * psi.amplitudes.adjoint();
    return rho;
}

/// White-noise GHZ mixture (1 - v) I/2^N + v |GHZ><GHZ|.
inline DensityMatrix noisy_ghz(int num_qubits, double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw ValidationError("visibility " + std::to_string(visibility) +
                              " outside [0, 1]");
    }
    const Eigen::Index dim = detail::checked_state_dim(num_qubits, "noisy_ghz");
    const StateVector ghz = generalized_ghz(num_qubits, std::numbers::pi / 4.0);
    DensityMatrix rho;
    rho.num_qubits = num_qubits;
    rho.matrix = ComplexMatrix::Identity(dim, dim) *
                     Complex((1.0 - visibility) / static_cast<double>(dim), 0.0) +
                 visibility * (ghz.amplitudes * ghz.amplitudes.adjoint());
    return rho;
}

/// Euclidean norm of the amplitude vector.
inline double state_norm(const StateVector &psi) {
    return psi.amplitudes.norm();
}

} // namespace bellkit
