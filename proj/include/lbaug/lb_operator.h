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

#include <lbaug/mesh.h>

#include <filesystem>
#include <optional>

namespace lbaug {

///
/// Cotangent discretization of the Laplace-Beltrami operator, Delta = A^{-1} C.
///
/// `stiffness` is the symmetric V x V matrix with C_ij = -(cot a_ij + cot b_ij) / 2 over the
/// triangles sharing edge (i, j) and C_ii = -sum_j C_ij. `areas` holds the mixed Voronoi vertex
/// areas. `lambda_max` is filled in by spectral_radius().
///
template <typename Scalar>
struct LBOperator
{
    SparseMatrix<Scalar> stiffness;
    VectorX<Scalar> areas;
    std::optional<Scalar> lambda_max;

    Index num_vertices() const { return areas.size(); }
};

///
/// Assembles the operator from a validated mesh.
///
/// Vertex areas follow the mixed-area rule: a triangle contributes its Voronoi share to each
/// corner when it has no obtuse angle; otherwise it contributes area/2 to the obtuse corner
/// and area/4 to the other two. Boundary edges get the single incident cotangent.
///
/// @throws ValidationError naming the first degenerate triangle.
///
template <typename Scalar>
LBOperator<Scalar> assemble(const TriMesh<Scalar>& mesh);

///
/// Largest eigenvalue of C psi = lambda A psi to relative tolerance `tol` in (0, 1e-2],
/// computed by restarted Lanczos on A^{-1/2} C A^{-1/2}. The result is also stored in
/// `op.lambda_max`.
///
/// @throws ConvergenceError carrying the last estimate and residual.
///
template <typename Scalar>
Scalar spectral_radius(LBOperator<Scalar>& op, Scalar tol = Scalar(1e-10), int max_restarts = 200);

/// Headroom applied to lambda_max before normalization in the augmentation pipeline.
inline constexpr double default_headroom = 1.01;

///
/// The normalized operator 2 Delta / s - I with s = lambda_max * headroom.
///
/// Stored as one row-scaled sparse matrix so apply() is a single sparse product. With
/// headroom >= 1 the spectrum lies in [-1, 1].
///
template <typename Scalar>
class NormalizedOperator
{
public:
    NormalizedOperator() = default;
    NormalizedOperator(SparseMatrix<Scalar> matrix, Scalar scale, VectorX<Scalar> areas)
        : m_matrix(std::move(matrix))
        , m_scale(scale)
        , m_areas(std::move(areas))
    {}

    /// Spectral scale s: raw eigenvalue lambda maps to 2 lambda / s - 1.
    Scalar scale() const { return m_scale; }
    Index rows() const { return m_matrix.rows(); }
    const SparseMatrix<Scalar>& matrix() const { return m_matrix; }
    /// Vertex areas of the underlying operator (weights of the exact mean channel).
    const VectorX<Scalar>& areas() const { return m_areas; }

    /// out = (2 Delta / s - I) in, column by column. `in` is V x m.
    template <typename In, typename Out>
    void apply(const Eigen::MatrixBase<In>& in, Eigen::MatrixBase<Out>& out) const
    {
        out.derived().noalias() = m_matrix * in.derived();
    }

    template <typename In>
    MatrixX<Scalar> operator*(const Eigen::MatrixBase<In>& in) const
    {
        return m_matrix * in.derived();
    }

private:
    SparseMatrix<Scalar> m_matrix;
    Scalar m_scale = 0;
    VectorX<Scalar> m_areas;
};

/// @throws ValidationError when lambda_max is missing or not positive, or headroom < 1.
template <typename Scalar>
NormalizedOperator<Scalar> normalize(
    const LBOperator<Scalar>& op,
    Scalar headroom = Scalar(default_headroom));

/// Sum of vertex areas.
template <typename Scalar>
Scalar total_area(const LBOperator<Scalar>& op)
{
    return op.areas.sum();
}

///
/// Debug export: `<prefix>.coo.txt` with one "row col value" line per stored entry of C,
/// `<prefix>.areas.csv` with "vertex,area" rows. Values use shortest round-trip formatting.
///
template <typename Scalar>
void export_operator(const LBOperator<Scalar>& op, const std::filesystem::path& prefix);

} // namespace lbaug
