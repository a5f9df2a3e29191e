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
#include <lbaug/mesh.h>

#include <Eigen/Geometry>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>

namespace lbaug {

template <typename Scalar>
Scalar triangle_area(const TriMesh<Scalar>& mesh, Index t)
{
    using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
    const Vec3 a = mesh.vertices.row(mesh.triangles(t, 0)).transpose();
    const Vec3 b = mesh.vertices.row(mesh.triangles(t, 1)).transpose();
    const Vec3 c = mesh.vertices.row(mesh.triangles(t, 2)).transpose();
    return Scalar(0.5) * (b - a).cross(c - a).norm();
}

template <typename Scalar>
void validate_mesh(const TriMesh<Scalar>& mesh)
{
    const Index nv = mesh.num_vertices();
    if (nv == 0 || mesh.num_triangles() == 0) {
        throw ValidationError("mesh has no vertices or no triangles");
    }
    if (!mesh.vertices.allFinite()) {
        for (Index v = 0; v < nv; ++v) {
            if (!mesh.vertices.row(v).allFinite()) {
                throw ValidationError("vertex " + std::to_string(v) + " has non-finite coordinates");
            }
        }
    }
    std::vector<char> referenced(static_cast<std::size_t>(nv), 0);
    for (Index t = 0; t < mesh.num_triangles(); ++t) {
        for (int c = 0; c < 3; ++c) {
            const Index v = mesh.triangles(t, c);
            if (v < 0 || v >= nv) {
                throw ValidationError(
                    "triangle " + std::to_string(t) + " references vertex index " +
                    std::to_string(v) + " out of range [0, " + std::to_string(nv) + ")");
            }
            referenced[static_cast<std::size_t>(v)] = 1;
        }
        const auto tri = mesh.triangles.row(t);
        if (tri(0) == tri(1) || tri(1) == tri(2) || tri(0) == tri(2)) {
            throw ValidationError("triangle " + std::to_string(t) + " repeats a vertex");
        }
        if (!(static_cast<double>(triangle_area(mesh, t)) > degenerate_area)) {
            throw ValidationError("triangle " + std::to_string(t) + " is degenerate (zero area)");
        }
    }
    for (Index v = 0; v < nv; ++v) {
        if (!referenced[static_cast<std::size_t>(v)]) {
            throw ValidationError("vertex " + std::to_string(v) + " is not referenced by any triangle");
        }
    }
}

template <typename Scalar>
std::vector<std::pair<Index, Index>> mesh_edges(const TriMesh<Scalar>& mesh)
{
    std::vector<std::pair<Index, Index>> edges;
    edges.reserve(static_cast<std::size_t>(3 * mesh.num_triangles()));
    for (Index t = 0; t < mesh.num_triangles(); ++t) {
        for (int c = 0; c < 3; ++c) {
            Index i = mesh.triangles(t, c);
            Index j = mesh.triangles(t, (c + 1) % 3);
            edges.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

template <typename Scalar>
std::vector<std::vector<Index>> vertex_adjacency(const TriMesh<Scalar>& mesh)
{
    std::vector<std::vector<Index>> adj(static_cast<std::size_t>(mesh.num_vertices()));
    for (const auto& [i, j] : mesh_edges(mesh)) {
        adj[static_cast<std::size_t>(i)].push_back(j);
        adj[static_cast<std::size_t>(j)].push_back(i);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

template <typename Scalar>
Index euler_characteristic(const TriMesh<Scalar>& mesh)
{
    return mesh.num_vertices() - static_cast<Index>(mesh_edges(mesh).size()) +
           mesh.num_triangles();
}

template <typename Scalar>
TriMesh<Scalar> make_tetrahedron()
{
    TriMesh<Scalar> mesh;
    const Scalar s = Scalar(1) / (Scalar(2) * std::sqrt(Scalar(2)));
    mesh.vertices.resize(4, 3);
    mesh.vertices << s, s, s, s, -s, -s, -s, s, -s, -s, -s, s;
    mesh.triangles.resize(4, 3);
    mesh.triangles << 0, 1, 2, 0, 3, 1, 0, 2, 3, 1, 3, 2;
    return mesh;
}

template <typename Scalar>
TriMesh<Scalar> make_icosphere(int level)
{
    if (level < 0 || level > 7) {
        throw ValidationError("icosphere level must be in [0, 7], got " + std::to_string(level));
    }
    using Vec3 = Eigen::Matrix<double, 3, 1>;
    const double phi = std::numbers::phi;
    std::vector<Vec3> verts = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
    };
    for (auto& v : verts) v.normalize();
    std::vector<std::array<Index, 3>> tris = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
    };

    for (int l = 0; l < level; ++l) {
        std::map<std::pair<Index, Index>, Index> midpoint;
        auto mid = [&](Index a, Index b) {
            const auto key = std::make_pair(std::min(a, b), std::max(a, b));
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            verts.push_back((verts[static_cast<std::size_t>(a)] + verts[static_cast<std::size_t>(b)])
                                .normalized());
            const Index id = static_cast<Index>(verts.size()) - 1;
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<std::array<Index, 3>> next;
        next.reserve(tris.size() * 4);
        for (const auto& [a, b, c] : tris) {
            const Index ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
            next.push_back({a, ab, ca});
            next.push_back({b, bc, ab});
            next.push_back({c, ca, bc});
            next.push_back({ab, bc, ca});
        }
        tris = std::move(next);
    }

    TriMesh<Scalar> mesh;
    mesh.vertices.resize(static_cast<Index>(verts.size()), 3);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        mesh.vertices.row(static_cast<Index>(i)) = verts[i].cast<Scalar>().transpose();
    }
    mesh.triangles.resize(static_cast<Index>(tris.size()), 3);
    for (std::size_t t = 0; t < tris.size(); ++t) {
        mesh.triangles.row(static_cast<Index>(t)) << tris[t][0], tris[t][1], tris[t][2];
    }
    return mesh;
}

template <typename Scalar>
TriMesh<Scalar> make_uv_sphere(int res)
{
    if (res < 3 || res > 1000) {
        throw ValidationError("uv-sphere resolution must be in [3, 1000], got " + std::to_string(res));
    }
    const Index seg = 2 * res;
    const Index rings = res - 1;
    const Index nv = 2 + rings * seg;
    TriMesh<Scalar> mesh;
    mesh.vertices.resize(nv, 3);
    mesh.vertices.row(0) << 0, 0, 1;
    for (Index r = 0; r < rings; ++r) {
        const double theta = std::numbers::pi * double(r + 1) / double(res);
        for (Index s = 0; s < seg; ++s) {
            const double ph = 2.0 * std::numbers::pi * double(s) / double(seg);
            mesh.vertices.row(1 + r * seg + s) << Scalar(std::sin(theta) * std::cos(ph)),
                Scalar(std::sin(theta) * std::sin(ph)), Scalar(std::cos(theta));
        }
    }
    mesh.vertices.row(nv - 1) << 0, 0, -1;

    auto ring = [&](Index r, Index s) { return 1 + r * seg + (s % seg); };
    mesh.triangles.resize(4 * Index(res) * (res - 1), 3);
    Index t = 0;
    for (Index s = 0; s < seg; ++s) {
        mesh.triangles.row(t++) << 0, ring(0, s), ring(0, s + 1);
    }
    for (Index r = 0; r + 1 < rings; ++r) {
        for (Index s = 0; s < seg; ++s) {
            mesh.triangles.row(t++) << ring(r, s), ring(r + 1, s), ring(r + 1, s + 1);
            mesh.triangles.row(t++) << ring(r, s), ring(r + 1, s + 1), ring(r, s + 1);
        }
    }
    for (Index s = 0; s < seg; ++s) {
        mesh.triangles.row(t++) << ring(rings - 1, s), nv - 1, ring(rings - 1, s + 1);
    }
    return mesh;
}

namespace {

int parse_level(const std::string& kind, std::size_t colon)
{
    int value = 0;
    const char* first = kind.data() + colon + 1;
    const char* last = kind.data() + kind.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (colon == std::string::npos || ec != std::errc() || ptr != last) {
        throw ValidationError("synthetic mesh '" + kind + "' needs an integer parameter");
    }
    return value;
}

} // namespace

template <typename Scalar>
TriMesh<Scalar> make_synthetic(const std::string& kind)
{
    if (kind == "tetrahedron") return make_tetrahedron<Scalar>();
    const auto colon = kind.find(':');
    const std::string name = kind.substr(0, colon);
    if (name == "icosphere") return make_icosphere<Scalar>(parse_level(kind, colon));
    if (name == "uvsphere") return make_uv_sphere<Scalar>(parse_level(kind, colon));
    throw ValidationError("unsupported synthetic mesh kind '" + kind + "'");
}

#define LBAUG_INSTANTIATE(Scalar)                                                         \
    template void validate_mesh(const TriMesh<Scalar>&);                                  \
    template Scalar triangle_area(const TriMesh<Scalar>&, Index);                         \
    template std::vector<std::pair<Index, Index>> mesh_edges(const TriMesh<Scalar>&);     \
    template std::vector<std::vector<Index>> vertex_adjacency(const TriMesh<Scalar>&);    \
    template Index euler_characteristic(const TriMesh<Scalar>&);                          \
    template TriMesh<Scalar> make_tetrahedron<Scalar>();                                  \
    template TriMesh<Scalar> make_icosphere<Scalar>(int);                                 \
    template TriMesh<Scalar> make_uv_sphere<Scalar>(int);                                 \
    template TriMesh<Scalar> make_synthetic<Scalar>(const std::string&);

LBAUG_INSTANTIATE(float)
LBAUG_INSTANTIATE(double)

#undef LBAUG_INSTANTIATE

} // namespace lbaug
