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
#include "text_util.h"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

namespace lbaug {

MeshFormat mesh_format_from_path(const std::filesystem::path& path)
{
    const auto ext = path.extension().string();
    if (ext == ".off" || ext == ".OFF") return MeshFormat::off;
    if (ext == ".ply" || ext == ".PLY") return MeshFormat::ply_ascii;
    throw ValidationError("cannot infer mesh format from extension of '" + path.string() + "'");
}

namespace {

using detail::LineReader;
using detail::parse_number;

template <typename Scalar>
struct MeshBuilder
{
    std::vector<Scalar> coords;
    std::vector<Index> indices;

    TriMesh<Scalar> finish()
    {
        TriMesh<Scalar> mesh;
        const Index nv = static_cast<Index>(coords.size() / 3);
        const Index nt = static_cast<Index>(indices.size() / 3);
        mesh.vertices.resize(nv, 3);
        mesh.triangles.resize(nt, 3);
        std::copy(coords.begin(), coords.end(), mesh.vertices.data());
        std::copy(indices.begin(), indices.end(), mesh.triangles.data());
        validate_mesh(mesh);
        return mesh;
    }
};

// OFF: optional comments (#), header "OFF", counts "V F [E]", V rows "x y z", F rows "3 i j k".
template <typename Scalar>
TriMesh<Scalar> parse_off(std::istream& in)
{
    LineReader reader(in, '#');
    auto tokens = reader.next();
    if (!tokens || (*tokens)[0] != "OFF") {
        throw ParseError("missing OFF header", reader.line());
    }
    tokens->erase(tokens->begin());
    if (tokens->empty()) {
        tokens = reader.next();
        if (!tokens) throw ParseError("missing OFF counts line", reader.line());
    }
    if (tokens->size() < 2) throw ParseError("OFF counts line needs 'V F [E]'", reader.line());
    const auto nv = parse_number<long long>((*tokens)[0], reader.line());
    const auto nf = parse_number<long long>((*tokens)[1], reader.line());
    if (nv < 0 || nf < 0) throw ParseError("negative element count", reader.line());

    MeshBuilder<Scalar> builder;
    builder.coords.reserve(static_cast<std::size_t>(3 * nv));
    for (long long v = 0; v < nv; ++v) {
        tokens = reader.next();
        if (!tokens) throw ParseError("unexpected end of file in vertex block", reader.line());
        if (tokens->size() < 3) throw ParseError("vertex row needs x y z", reader.line());
        for (int c = 0; c < 3; ++c) {
            builder.coords.push_back(parse_number<Scalar>((*tokens)[c], reader.line()));
        }
    }
    builder.indices.reserve(static_cast<std::size_t>(3 * nf));
    for (long long f = 0; f < nf; ++f) {
        tokens = reader.next();
        if (!tokens) throw ParseError("unexpected end of file in face block", reader.line());
        const auto count = parse_number<long long>((*tokens)[0], reader.line());
        if (count != 3) {
            throw ParseError(
                "face " + std::to_string(f) + " has " + std::to_string(count) +
                    " vertices; only triangles are supported",
                reader.line());
        }
        if (tokens->size() < 4) throw ParseError("face row needs 3 indices", reader.line());
        for (int c = 1; c <= 3; ++c) {
            const auto idx = parse_number<long long>((*tokens)[c], reader.line());
            if (idx < 0 || idx >= nv) {
                throw ValidationError(
                    "face " + std::to_string(f) + " (line " + std::to_string(reader.line()) +
                    ") index " + std::to_string(idx) + " out of range [0, " + std::to_string(nv) +
                    ")");
            }
            builder.indices.push_back(static_cast<Index>(idx));
        }
    }
    return builder.finish();
}

struct PlyProperty
{
    std::string name;
    bool is_list = false;
};

struct PlyElement
{
    std::string name;
    long long count = 0;
    std::vector<PlyProperty> properties;
};

// ASCII PLY with a "vertex" element (scalar x, y, z among its properties) and a "face" element
// holding a list property "vertex_indices" (or "vertex_index"). Other elements and properties
// are skipped.
template <typename Scalar>
TriMesh<Scalar> parse_ply(std::istream& in)
{
    LineReader reader(in, '\0');
    auto tokens = reader.next();
    if (!tokens || (*tokens)[0] != "ply") throw ParseError("missing 'ply' magic", reader.line());

    std::vector<PlyElement> elements;
    bool have_format = false;
    for (;;) {
        tokens = reader.next();
        if (!tokens) throw ParseError("unexpected end of file in PLY header", reader.line());
        const auto& key = (*tokens)[0];
        if (key == "end_header") break;
        if (key == "comment" || key == "obj_info") continue;
        if (key == "format") {
            if (tokens->size() < 2 || (*tokens)[1] != "ascii") {
                throw ParseError("only ASCII PLY is supported", reader.line());
            }
            have_format = true;
        } else if (key == "element") {
            if (tokens->size() != 3) throw ParseError("malformed element line", reader.line());
            elements.push_back(
                {std::string((*tokens)[1]), parse_number<long long>((*tokens)[2], reader.line()), {}});
            if (elements.back().count < 0) throw ParseError("negative element count", reader.line());
        } else if (key == "property") {
            if (elements.empty()) throw ParseError("property before any element", reader.line());
            PlyProperty prop;
            if (tokens->size() >= 2 && (*tokens)[1] == "list") {
                if (tokens->size() != 5) throw ParseError("malformed list property", reader.line());
                prop.is_list = true;
                prop.name = std::string((*tokens)[4]);
            } else {
                if (tokens->size() != 3) throw ParseError("malformed property", reader.line());
                prop.name = std::string((*tokens)[2]);
            }
            elements.back().properties.push_back(prop);
        } else {
            throw ParseError("unknown PLY header keyword '" + std::string(key) + "'", reader.line());
        }
    }
    if (!have_format) throw ParseError("PLY header lacks a format line", reader.line());

    MeshBuilder<Scalar> builder;
    long long nv = -1;
    bool have_faces = false;
    for (const auto& element : elements) {
        const bool is_vertex = element.name == "vertex";
        const bool is_face = element.name == "face";
        std::array<int, 3> xyz = {-1, -1, -1};
        int face_list = -1;
        for (std::size_t p = 0; p < element.properties.size(); ++p) {
            const auto& prop = element.properties[p];
            if (is_vertex && !prop.is_list) {
                if (prop.name == "x") xyz[0] = int(p);
                if (prop.name == "y") xyz[1] = int(p);
                if (prop.name == "z") xyz[2] = int(p);
            }
            if (is_face && prop.is_list &&
                (prop.name == "vertex_indices" || prop.name == "vertex_index")) {
                face_list = int(p);
            }
        }
        if (is_vertex) {
            if (xyz[0] < 0 || xyz[1] < 0 || xyz[2] < 0) {
                throw ParseError("vertex element lacks x, y, z properties");
            }
            nv = element.count;
        }
        if (is_face) {
            if (face_list < 0) throw ParseError("face element lacks a vertex_indices list");
            if (nv < 0) throw ParseError("face element precedes vertex element");
            have_faces = true;
        }

        for (long long row = 0; row < element.count; ++row) {
            tokens = reader.next();
            if (!tokens) {
                throw ParseError(
                    "unexpected end of file in element '" + element.name + "'", reader.line());
            }
            std::size_t pos = 0;
            std::array<Scalar, 3> coord{};
            for (std::size_t p = 0; p < element.properties.size(); ++p) {
                if (pos >= tokens->size()) throw ParseError("row has too few values", reader.line());
                if (!element.properties[p].is_list) {
                    for (int c = 0; c < 3; ++c) {
                        if (is_vertex && xyz[c] == int(p)) {
                            coord[c] = parse_number<Scalar>((*tokens)[pos], reader.line());
                        }
                    }
                    ++pos;
                    continue;
                }
                const auto count = parse_number<long long>((*tokens)[pos++], reader.line());
                if (count < 0 || pos + std::size_t(count) > tokens->size()) {
                    throw ParseError("list property runs past end of row", reader.line());
                }
                if (is_face && int(p) == face_list) {
                    if (count != 3) {
                        throw ParseError(
                            "face " + std::to_string(row) + " has " + std::to_string(count) +
                                " vertices; only triangles are supported",
                            reader.line());
                    }
                    for (int c = 0; c < 3; ++c) {
                        const auto idx = parse_number<long long>((*tokens)[pos + c], reader.line());
                        if (idx < 0 || idx >= nv) {
                            throw ValidationError(
                                "face " + std::to_string(row) + " (line " +
                                std::to_string(reader.line()) + ") index " + std::to_string(idx) +
                                " out of range [0, " + std::to_string(nv) + ")");
                        }
                        builder.indices.push_back(static_cast<Index>(idx));
                    }
                }
                pos += std::size_t(count);
            }
            if (is_vertex) builder.coords.insert(builder.coords.end(), coord.begin(), coord.end());
        }
    }
    if (nv < 0 || !have_faces) throw ParseError("PLY file needs vertex and face elements");
    return builder.finish();
}

} // namespace

template <typename Scalar>
TriMesh<Scalar> parse_mesh(std::istream& in, MeshFormat format)
{
    return format == MeshFormat::off ? parse_off<Scalar>(in) : parse_ply<Scalar>(in);
}

template <typename Scalar>
TriMesh<Scalar> load_mesh(const std::filesystem::path& path, MeshFormat format)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open mesh file '" + path.string() + "'");
    try {
        return parse_mesh<Scalar>(in, format);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

template <typename Scalar>
void write_mesh(const TriMesh<Scalar>& mesh, std::ostream& out, MeshFormat format)
{
    using detail::format_number;
    if (format == MeshFormat::off) {
        out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_triangles() << " 0\n";
        for (Index v = 0; v < mesh.num_vertices(); ++v) {
            out << format_number(mesh.vertices(v, 0)) << ' ' << format_number(mesh.vertices(v, 1))
                << ' ' << format_number(mesh.vertices(v, 2)) << '\n';
        }
        for (Index t = 0; t < mesh.num_triangles(); ++t) {
            out << "3 " << mesh.triangles(t, 0) << ' ' << mesh.triangles(t, 1) << ' '
                << mesh.triangles(t, 2) << '\n';
        }
        return;
    }
    const char* type = std::is_same_v<Scalar, float> ? "float" : "double";
    out << "ply\nformat ascii 1.0\n"
        << "element vertex " << mesh.num_vertices() << '\n'
        << "property " << type << " x\nproperty " << type << " y\nproperty " << type << " z\n"
        << "element face " << mesh.num_triangles() << '\n'
        << "property list uchar int vertex_indices\nend_header\n";
    for (Index v = 0; v < mesh.num_vertices(); ++v) {
        out << format_number(mesh.vertices(v, 0)) << ' ' << format_number(mesh.vertices(v, 1))
            << ' ' << format_number(mesh.vertices(v, 2)) << '\n';
    }
    for (Index t = 0; t < mesh.num_triangles(); ++t) {
        out << "3 " << mesh.triangles(t, 0) << ' ' << mesh.triangles(t, 1) << ' '
            << mesh.triangles(t, 2) << '\n';
    }
}

template <typename Scalar>
void save_mesh(const TriMesh<Scalar>& mesh, const std::filesystem::path& path, MeshFormat format)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    write_mesh(mesh, out, format);
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

#define LBAUG_INSTANTIATE(Scalar)                                                              \
    template TriMesh<Scalar> parse_mesh<Scalar>(std::istream&, MeshFormat);                    \
    template TriMesh<Scalar> load_mesh<Scalar>(const std::filesystem::path&, MeshFormat);      \
    template void write_mesh(const TriMesh<Scalar>&, std::ostream&, MeshFormat);               \
    template void save_mesh(const TriMesh<Scalar>&, const std::filesystem::path&, MeshFormat);

LBAUG_INSTANTIATE(float)
LBAUG_INSTANTIATE(double)

#undef LBAUG_INSTANTIATE

} // namespace lbaug
