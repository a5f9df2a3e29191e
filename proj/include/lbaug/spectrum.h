/*
 * Copyright 2026 The lbaug Authors. All rights reserved.
 * This file is licensed to you under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software distributed under
 * the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR REPRESENTATIONS
 * OF ANY KIND, either express or implied. See the License for the specific language
 * governing permissions and limitations under the License.
 */
#pragma once

#include <lbaug/lb_operator.h>

#include <filesystem>

namespace lbaug {

///
/// Leading eigenpairs of C psi = lambda A psi.
///
/// Eigenvalues are nondecreasing. Eigenvectors (V x J, one per column) are orthonormal in the
/// area-weighted inner product, psi_j^T A psi_k = delta_jk, and each column is signed so that
/// its largest-magnitude entry is positive.
///
template <typename Scalar>
struct EigenBasis
{
    VectorX<Scalar> eigenvalues;
    MatrixX<Scalar> eigenvectors;
    /// Vertex areas the basis is orthonormal against.
    VectorX<Scalar> areas;

    Index size() const { return eigenvalues.size(); }
    Index num_vertices() const { return eigenvectors.rows(); }
};

struct EigenOptions
{
    /// Meshes with at most this many vertices use the dense solver.
    Index dense_threshold = 2000;
    /// Residual tolerance ||C psi - lambda A psi|| <= tol * (||C psi|| + shift ||A psi||)
    /// accepted by the iterative solver.
    double tolerance = 1e-9;
    /// Block width of the shift-invert block Lanczos solver.
    Index block_size = 32;
};

///
/// First J eigenpairs of the operator.
///
/// Small meshes go through a dense symmetric solve of A^{-1/2} C A^{-1/2}. Larger meshes use
/// shift-invert block Lanczos with full reorthogonalization in the A inner product; the Krylov
/// space grows until every requested pair meets `options.tolerance`.
///
/// @throws ValidationError if J is not in [1, V]; ConvergenceError if the iterative solver
///         cannot reach the tolerance.
///
template <typename Scalar>
EigenBasis<Scalar> eigendecompose(
    const LBOperator<Scalar>& op,
    Index count,
    const EigenOptions& options = {});

/// Spectral coefficients c(i, j) = sum_v A_v f_i(v) psi_j(v); `signals` is n x V.
template <typename Scalar, typename Derived>
MatrixX<Scalar> forward(const EigenBasis<Scalar>& basis, const Eigen::MatrixBase<Derived>& signals)
{
    if (signals.cols() != basis.num_vertices()) {
        throw DimensionError(
            "signal has " + std::to_string(signals.cols()) + " vertices, basis has " +
            std::to_string(basis.num_vertices()));
    }
    return signals * (basis.areas.asDiagonal() * basis.eigenvectors);
}

/// Synthesis f_i(v) = sum_j c(i, j) psi_j(v); `coeffs` is n x J.
template <typename Scalar, typename Derived>
MatrixX<Scalar> inverse(const EigenBasis<Scalar>& basis, const Eigen::MatrixBase<Derived>& coeffs)
{
    if (coeffs.cols() != basis.size()) {
        throw DimensionError(
            "coefficient width " + std::to_string(coeffs.cols()) + " does not match basis size " +
            std::to_string(basis.size()));
    }
    return coeffs * basis.eigenvectors.transpose();
}

///
/// Little-endian binary file: 8-byte magic "LBAUGEB1", uint64 V, uint64 J, J float64
/// eigenvalues, V*J float64 eigenvector entries in column-major order, then a trailer of V
/// float64 vertex areas.
///
template <typename Scalar>
void save_basis(const EigenBasis<Scalar>& basis, const std::filesystem::path& path);

template <typename Scalar>
EigenBasis<Scalar> load_basis(const std::filesystem::path& path);

} // namespace lbaug
