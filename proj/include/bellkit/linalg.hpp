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
 * Minimal dense complex linear algebra for operators up to dimension 4096:
 * Kronecker products, Hermitian extremal eigenvalues, and trace pairings.
 * Storage and the eigensolver are Eigen's; everything is validated against
 * the tolerances used throughout the library.
 */

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "bellkit/errors.hpp"

namespace bellkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Entry-wise tolerance for treating a matrix as Hermitian. Inputs here are
/// products of exact +-1 / sqrt(2)-scale constants, so accumulated error
/// stays far below this.
inline constexpr double kHermitianTol = 1e-9;

/// Largest entry of |M - M^dagger|; infinity for non-square input.
inline double hermiticity_defect(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    if (m.size() == 0) {
        return 0.0;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTol) {
    return hermiticity_defect(m) <= tol;
}

inline void require_hermitian(const ComplexMatrix &m,
                              double tol = kHermitianTol) {
    const double defect = hermiticity_defect(m);
    if (!(defect <= tol)) {
        throw ValidationError("matrix is not Hermitian (defect " +
                              std::to_string(defect) + " exceeds tolerance)");
    }
}

/// Kronecker product. result[(i*p+k),(j*q+l)] = a(i,j) * b(k,l) for p x q b,
/// i.e. the left factor owns the most significant index block.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const Eigen::Index rows = a.rows() * b.rows();
    const Eigen::Index cols = a.cols() * b.cols();
    if (rows > kMaxDim || cols > kMaxDim) {
        throw CapacityError("kron result dimension " + std::to_string(rows) +
                            "x" + std::to_string(cols) + " exceeds cap " +
                            std::to_string(kMaxDim));
    }
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

/// Largest |eigenvalue| of a Hermitian matrix. Throws ValidationError when
/// the Hermiticity check fails. Accuracy follows the dense solver (well
/// below 1e-8 relative at the dimensions used here).
inline double hermitian_max_abs_eigenvalue(const ComplexMatrix &h) {
    require_hermitian(h);
    if (h.rows() == 0) {
        throw ValidationError("empty matrix has no eigenvalues");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h,
                                                        Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ValidationError("Hermitian eigenvalue solver failed");
    }
    const auto &ev = solver.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

/// Re Tr(rho * b). The imaginary part of the trace must vanish (both inputs
/// Hermitian); it is checked against kHermitianTol.
inline double trace_product(const ComplexMatrix &rho, const ComplexMatrix &b) {
    if (rho.rows() != b.rows() || rho.cols() != b.cols() ||
        rho.rows() != rho.cols()) {
        throw ValidationError("trace_product requires equal square dimensions");
    }
    // Tr(rho b) = sum_{i,k} rho(i,k) b(k,i)
    const Complex tr = rho.cwiseProduct(b.transpose()).sum();
    if (std::abs(tr.imag()) > kHermitianTol) {
        throw ValidationError("trace has non-negligible imaginary part " +
                              std::to_string(tr.imag()));
    }
    return tr.real();
}

} // namespace bellkit
