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

#include "oracles.h"

#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

using namespace lbaug;

TEST_SUITE("mesh")
{
    TEST_CASE("tetrahedron has four unit edges")
    {
        const auto mesh = make_tetrahedron<double>();
        CHECK(mesh.num_vertices() == 4);
        CHECK(mesh.num_triangles() == 4);
        const auto edges = mesh_edges(mesh);
        REQUIRE(edges.size() == 6);
        for (const auto& [i, j] : edges) {
            CHECK((mesh.vertices.row(i) - mesh.vertices.row(j)).norm() == doctest::Approx(1.0).epsilon(1e-15));
        }
        CHECK(euler_characteristic(mesh) == 2);
        CHECK_NOTHROW(validate_mesh(mesh));
    }

    TEST_CASE("icosphere counts follow the subdivision recurrence")
    {
        // Each 1-to-4 split adds one vertex per edge: V' = V + E, E' = 2E + 3F, F' = 4F.
        Index v = 12, e = 30, f = 20;
        for (int level = 0; level <= 4; ++level) {
            const auto mesh = make_icosphere<double>(level);
            CHECK(mesh.num_vertices() == v);
            CHECK(mesh.num_triangles() == f);
            CHECK(static_cast<Index>(mesh_edges(mesh).size()) == e);
            CHECK(euler_characteristic(mesh) == 2);
            for (Index i = 0; i < mesh.num_vertices(); ++i) {
                CHECK(mesh.vertices.row(i).norm() == doctest::Approx(1.0).epsilon(1e-14));
            }
            const Index v2 = v + e, e2 = 2 * e + 3 * f, f2 = 4 * f;
            v = v2;
            e = e2;
            f = f2;
        }
        CHECK(make_icosphere<double>(3).num_vertices() == 642);
    }

    TEST_CASE("uv sphere counts")
    {
        for (int res : {3, 4, 10, 50}) {
            const auto mesh = make_uv_sphere<double>(res);
            CHECK(mesh.num_vertices() == 2 + (res - 1) * 2 * res);
            CHECK(mesh.num_triangles() == 4 * res * (res - 1));
            CHECK(euler_characteristic(mesh) == 2);
            CHECK_NOTHROW(validate_mesh(mesh));
        }
        CHECK_THROWS_AS(make_uv_sphere<double>(2), ValidationError);
    }

    TEST_CASE("synthetic factory is deterministic and rejects unknown kinds")
    {
        const auto a = make_synthetic<double>("icosphere:2");
        const auto b = make_synthetic<double>("icosphere:2");
        CHECK(a.vertices == b.vertices);
        CHECK(a.triangles == b.triangles);
        CHECK(make_synthetic<double>("tetrahedron").num_vertices() == 4);
        CHECK(make_synthetic<double>("uvsphere:5").num_vertices() == 42);
        CHECK_THROWS_AS(make_synthetic<double>("torus"), ValidationError);
        CHECK_THROWS_AS(make_synthetic<double>("icosphere:9"), ValidationError);
        CHECK_THROWS_AS(make_synthetic<double>("icosphere:x"), ValidationError);
    }

    TEST_CASE("OFF parsing")
    {
        std::istringstream in(
            "OFF\n"
            "# regular tetrahedron\n"
            "4 4 6\n"
            "1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n"
            "3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n");
        const auto mesh = parse_mesh<double>(in, MeshFormat::off);
        CHECK(mesh.num_vertices() == 4);
        CHECK(mesh.num_triangles() == 4);
        CHECK(mesh.vertices(1, 1) == -1.0);
    }

    TEST_CASE("OFF errors name the offending line")
    {
        SUBCASE("index out of range")
        {
            std::istringstream in("OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 9\n");
            try {
                parse_mesh<double>(in, MeshFormat::off);
                FAIL("expected an error");
            } catch (const ValidationError& e) {
                const std::string what = e.what();
                CHECK(what.find("9") != std::string::npos);
                CHECK(what.find("line 7") != std::string::npos);
            }
        }
        SUBCASE("quad face")
        {
            std::istringstream in("OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n4 0 1 2 3\n");
            try {
                parse_mesh<double>(in, MeshFormat::off);
                FAIL("expected an error");
            } catch (const ParseError& e) {
                CHECK(e.line() == 7);
            }
        }
        SUBCASE("bad number")
        {
            std::istringstream in("OFF\n3 1 0\n0 0 0\n1 zero 0\n0 1 0\n3 0 1 2\n");
            CHECK_THROWS_AS(parse_mesh<double>(in, MeshFormat::off), ParseError);
        }
        SUBCASE("truncated")
        {
            std::istringstream in("OFF\n3 1 0\n0 0 0\n1 0 0\n");
            CHECK_THROWS_AS(parse_mesh<double>(in, MeshFormat::off), ParseError);
        }
        SUBCASE("degenerate triangle")
        {
            std::istringstream in("OFF\n3 1 0\n0 0 0\n1 0 0\n2 0 0\n3 0 1 2\n");
            CHECK_THROWS_AS(parse_mesh<double>(in, MeshFormat::off), ValidationError);
        }
        SUBCASE("unreferenced vertex")
        {
            std::istringstream in("OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n5 5 5\n3 0 1 2\n");
            CHECK_THROWS_AS(parse_mesh<double>(in, MeshFormat::off), ValidationError);
        }
    }

    TEST_CASE("PLY parsing skips unknown properties and elements")
    {
        std::istringstream in(
            "ply\n"
            "format ascii 1.0\n"
            "comment made by hand\n"
            "element vertex 3\n"
            "property float x\n"
            "property float y\n"
            "property float z\n"
            "property uchar red\n"
            "element face 1\n"
            "property list uchar int vertex_indices\n"
            "element edge 1\n"
            "property int vertex1\n"
            "property int vertex2\n"
            "end_header\n"
            "0 0 0 255\n"
            "1 0 0 0\n"
            "0 1 0 7\n"
            "3 0 1 2\n"
            "0 1\n");
        const auto mesh = parse_mesh<double>(in, MeshFormat::ply_ascii);
        CHECK(mesh.num_vertices() == 3);
        CHECK(mesh.num_triangles() == 1);
        CHECK(mesh.vertices(2, 1) == 1.0);
    }

    TEST_CASE("PLY rejects binary encodings")
    {
        std::istringstream in("ply\nformat binary_little_endian 1.0\nelement vertex 0\nend_header\n");
        CHECK_THROWS_AS(parse_mesh<double>(in, MeshFormat::ply_ascii), ParseError);
    }

    TEST_CASE("save and load round-trip exactly")
    {
        const auto mesh = make_icosphere<double>(2);
        for (const char* name : {"ico2.off", "ico2.ply"}) {
            const auto path = test::temp_dir() / name;
            save_mesh(mesh, path);
            const auto back = load_mesh<double>(path);
            CHECK(back.vertices == mesh.vertices);
            CHECK(back.triangles == mesh.triangles);
        }
        const auto ply = load_mesh<double>(test::temp_dir() / "ico2.ply");
        CHECK(ply.num_vertices() == 162);
        CHECK(ply.num_triangles() == 320);
    }

    TEST_CASE("missing files are reported with their path")
    {
        try {
            load_mesh<double>("/nonexistent/shape.off");
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("/nonexistent/shape.off") != std::string::npos);
        }
        CHECK_THROWS_AS(mesh_format_from_path("shape.stl"), Error);
    }

    TEST_CASE("adjacency matches the edge list")
    {
        const auto mesh = make_icosphere<double>(1);
        const auto adjacency = vertex_adjacency(mesh);
        std::set<std::pair<Index, Index>> from_adjacency;
        for (Index v = 0; v < mesh.num_vertices(); ++v) {
            for (Index w : adjacency[static_cast<std::size_t>(v)]) {
                if (v < w) from_adjacency.emplace(v, w);
            }
        }
        const auto edges = mesh_edges(mesh);
        CHECK(std::set<std::pair<Index, Index>>(edges.begin(), edges.end()) == from_adjacency);
    }
}
