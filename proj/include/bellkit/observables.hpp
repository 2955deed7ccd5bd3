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
 * Single-qubit dichotomic observables parametrized by Bloch angles.
 * Convention: sigma_z = diag(1, -1), computational basis |0> = (1, 0).
 */

#pragma once

#include <array>
#include <cmath>

#include "bellkit/linalg.hpp"

namespace bellkit {

/// A +-1-valued measurement, the direction (theta, phi) on the Bloch sphere.
/// Angles are radians and deliberately unnormalized so optimizers can treat
/// them as unconstrained parameters.
struct Observable {
    double theta = 0.0; ///< polar angle
    double phi = 0.0;   ///< azimuthal angle
};

/// The two measurement choices of one party: `a` is the unprimed setting,
/// `a_prime` the primed one.
struct ObserverSettings {
    Observable a;
    Observable a_prime;
};

inline const ComplexMatrix &identity2() {
    static const ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    return m;
}

inline const ComplexMatrix &pauli_x() {
    static const ComplexMatrix m = [] {
        ComplexMatrix x(2, 2);
        x << 0, 1, //
            1, 0;
        return x;
    }();
    return m;
}

inline const ComplexMatrix &pauli_y() {
    static const ComplexMatrix m = [] {
        ComplexMatrix y(2, 2);
        y << Complex(0, 0), Complex(0, -1), //
            Complex(0, 1), Complex(0, 0);
        return y;
    }();
    return m;
}

inline const ComplexMatrix &pauli_z() {
    static const ComplexMatrix m = [] {
        ComplexMatrix z(2, 2);
        z << 1, 0, //
            0, -1;
        return z;
    }();
    return m;
}

/// Unit vector (sin t cos p, sin t sin p, cos t).
inline std::array<double, 3> bloch_vector(const Observable &o) {
    return {std::sin(o.theta) * std::cos(o.phi),
            std::sin(o.theta) * std::sin(o.phi), std::cos(o.theta)};
}

/// a . sigma: the 2x2 Hermitian matrix with eigenvalues +-1 measuring along
/// the Bloch direction (theta, phi).
inline ComplexMatrix bloch_observable(double theta, double phi) {
    const std::array<double, 3> a = bloch_vector({theta, phi});
    ComplexMatrix m(2, 2);
    m << Complex(a[2], 0), Complex(a[0], -a[1]), //
        Complex(a[0], a[1]), Complex(-a[2], 0);
    return m;
}

inline ComplexMatrix bloch_observable(const Observable &o) {
    return bloch_observable(o.theta, o.phi);
}

/// Euclidean dot product of the two Bloch vectors, in [-1, 1].
inline double bloch_dot(const Observable &a, const Observable &b) {
    const auto va = bloch_vector(a);
    const auto vb = bloch_vector(b);
    return va[0] * vb[0] + va[1] * vb[1] + va[2] * vb[2];
}

} // namespace bellkit
