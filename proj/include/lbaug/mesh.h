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

#include <lbaug/common.h>

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace lbaug {

///
/// Triangulated surface: V x 3 vertex positions and T x 3 zero-based vertex indices.
///
/// A TriMesh returned by any factory in this library satisfies validate_mesh(): indices are
/// in range, no triangle repeats a vertex, no triangle has area <= 1e-12, and every vertex is
/// referenced. The mesh is treated as immutable once built.
///
template <typename Scalar>
struct TriMesh
{
    Eigen::Matrix<Scalar, Eigen::Dynamic, 3, Eigen::RowMajor> vertices;
    Eigen::Matrix<Index, Eigen::Dynamic, 3, Eigen::RowMajor> triangles;

    Index num_vertices() const { return vertices.rows(); }
    Index num_triangles() const { return triangles.rows(); }
};

/// Triangles with area at or below this value are rejected as degenerate.
inline constexpr double degenerate_area = 1e-12;

/// Throws ValidationError naming the first offending triangle or vertex.
template <typename Scalar>
void validate_mesh(const TriMesh<Scalar>& mesh);

/// Area of triangle t.
template <typename Scalar>
Scalar triangle_area(const TriMesh<Scalar>& mesh, Index t);

/// Unique undirected edges (i < j), sorted lexicographically.
template <typename Scalar>
std::vector<std::pair<Index, Index>> mesh_edges(const TriMesh<Scalar>& mesh);

/// Per-vertex sorted neighbor lists over mesh edges.
template <typename Scalar>
std::vector<std::vector<Index>> vertex_adjacency(const TriMesh<Scalar>& mesh);

/// V - E + F.
template <typename Scalar>
Index euler_characteristic(const TriMesh<Scalar>& mesh);

/// Regular tetrahedron with unit edge length centred at the origin.
template <typename Scalar>
TriMesh<Scalar> make_tetrahedron();

/// Icosahedron on the unit sphere refined `level` times by 1-to-4 midpoint subdivision.
/// Level must be in [0, 7].
template <typename Scalar>
TriMesh<Scalar> make_icosphere(int level);

/// Latitude/longitude sphere with `res` latitude rings and 2*res longitude segments.
/// V = 2 + (res - 1) * 2 * res, T = 4 * res * (res - 1). `res` must be in [3, 1000].
template <typename Scalar>
TriMesh<Scalar> make_uv_sphere(int res);

///
/// Builds a synthetic mesh from a textual description: "tetrahedron", "icosphere:<level>" or
/// "uvsphere:<res>". Throws ValidationError for unknown kinds or out-of-range parameters.
///
template <typename Scalar>
TriMesh<Scalar> make_synthetic(const std::string& kind);

enum class MeshFormat { off, ply_ascii };

/// Picks the format from the file extension (.off or .ply).
MeshFormat mesh_format_from_path(const std::filesystem::path& path);

template <typename Scalar>
TriMesh<Scalar> load_mesh(const std::filesystem::path& path, MeshFormat format);

template <typename Scalar>
TriMesh<Scalar> load_mesh(const std::filesystem::path& path)
{
    return load_mesh<Scalar>(path, mesh_format_from_path(path));
}

/// Parses mesh text; used by load_mesh and directly by tests.
template <typename Scalar>
TriMesh<Scalar> parse_mesh(std::istream& in, MeshFormat format);

template <typename Scalar>
void save_mesh(const TriMesh<Scalar>& mesh, const std::filesystem::path& path, MeshFormat format);

template <typename Scalar>
void save_mesh(const TriMesh<Scalar>& mesh, const std::filesystem::path& path)
{
    save_mesh(mesh, path, mesh_format_from_path(path));
}

template <typename Scalar>
void write_mesh(const TriMesh<Scalar>& mesh, std::ostream& out, MeshFormat format);

} // namespace lbaug
