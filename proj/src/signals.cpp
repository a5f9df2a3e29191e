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
#include <lbaug/signals.h>
#include "binary_io.h"
#include "text_util.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lbaug {

template <typename Scalar>
void validate_signals(const SignalSet<Scalar>& signals)
{
    if (signals.size() < 1 || signals.num_vertices() < 1) {
        throw ValidationError("signal set is empty");
    }
    if (static_cast<Index>(signals.labels.size()) != signals.size()) {
        throw ValidationError(
            "signal set has " + std::to_string(signals.size()) + " observations but " +
            std::to_string(signals.labels.size()) + " labels");
    }
    for (Index i = 0; i < signals.size(); ++i) {
        for (Index v = 0; v < signals.num_vertices(); ++v) {
            if (!std::isfinite(static_cast<double>(signals.data(i, v)))) {
                throw ValidationError(
                    "observation " + std::to_string(i) + " has a non-finite value at vertex " +
                    std::to_string(v));
            }
        }
    }
}

template <typename Scalar>
std::vector<int> class_labels(const SignalSet<Scalar>& signals)
{
    const std::set<int> unique(signals.labels.begin(), signals.labels.end());
    return {unique.begin(), unique.end()};
}

template <typename Scalar>
SignalSet<Scalar> select_class(const SignalSet<Scalar>& signals, int label)
{
    std::vector<Index> rows;
    for (std::size_t i = 0; i < signals.labels.size(); ++i) {
        if (signals.labels[i] == label) rows.push_back(static_cast<Index>(i));
    }
    SignalSet<Scalar> out;
    out.data.resize(static_cast<Index>(rows.size()), signals.num_vertices());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out.data.row(static_cast<Index>(r)) = signals.data.row(rows[r]);
    }
    out.labels.assign(rows.size(), label);
    out.provenance = signals.provenance;
    return out;
}

namespace {

std::string lower_extension(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path)
{
    return std::filesystem::path(path.string() + ".json");
}

nlohmann::ordered_json provenance_to_json(const Provenance& p)
{
    nlohmann::ordered_json j;
    j["kind"] = p.kind;
    j["method"] = p.method;
    j["seed"] = p.seed ? nlohmann::ordered_json(*p.seed) : nlohmann::ordered_json(nullptr);
    return j;
}

Provenance provenance_from_json(const nlohmann::json& j)
{
    Provenance p;
    p.kind = j.value("kind", std::string("real"));
    p.method = j.value("method", std::string());
    if (j.contains("seed") && !j.at("seed").is_null()) p.seed = j.at("seed").get<std::uint64_t>();
    return p;
}

template <typename Scalar>
void save_csv(const SignalSet<Scalar>& signals, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << "label";
    for (Index v = 0; v < signals.num_vertices(); ++v) out << ",v" << v;
    out << '\n';
    for (Index i = 0; i < signals.size(); ++i) {
        out << signals.labels[static_cast<std::size_t>(i)];
        for (Index v = 0; v < signals.num_vertices(); ++v) {
            out << ',' << detail::format_number(signals.data(i, v));
        }
        out << '\n';
    }
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

template <typename Scalar>
SignalSet<Scalar> load_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open signal file '" + path.string() + "'");
    std::vector<std::vector<Scalar>> rows;
    std::vector<int> labels;
    std::string text;
    std::size_t line = 0;
    Index width = -1;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty() || text == "\r") continue;
        const auto fields = detail::LineReader::split(text, ',');
        if (line == 1 && !fields.empty() && fields[0] == "label") continue;
        if (fields.size() < 2) throw ParseError("expected a label and at least one value", line);
        if (width < 0) width = static_cast<Index>(fields.size());
        if (static_cast<Index>(fields.size()) != width) {
            throw ParseError(
                "expected " + std::to_string(width) + " fields, found " +
                    std::to_string(fields.size()),
                line);
        }
        labels.push_back(detail::parse_number<int>(fields[0], line));
        std::vector<Scalar> row(fields.size() - 1);
        for (std::size_t v = 1; v < fields.size(); ++v) {
            row[v - 1] = detail::parse_number<Scalar>(fields[v], line);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("signal file '" + path.string() + "' has no observations");
    SignalSet<Scalar> out;
    out.data.resize(static_cast<Index>(rows.size()), width - 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (Index v = 0; v + 1 < width; ++v) out.data(static_cast<Index>(i), v) = rows[i][v];
    }
    out.labels = std::move(labels);
    return out;
}

template <typename Scalar>
void save_binary(const SignalSet<Scalar>& signals, const std::filesystem::path& path)
{
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot open '" + path.string() + "' for writing");
        out.write("LBAUGSM1", 8);
        detail::write_u64(out, static_cast<std::uint64_t>(signals.size()));
        detail::write_u64(out, static_cast<std::uint64_t>(signals.num_vertices()));
        for (Index i = 0; i < signals.size(); ++i) {
            for (Index v = 0; v < signals.num_vertices(); ++v) {
                detail::write_f64(out, double(signals.data(i, v)));
            }
        }
        if (!out) throw Error("failed writing '" + path.string() + "'");
    }
    nlohmann::ordered_json meta;
    meta["labels"] = signals.labels;
    meta["provenance"] = provenance_to_json(signals.provenance);
    const auto meta_path = sidecar_path(path);
    std::ofstream out(meta_path);
    if (!out) throw Error("cannot open '" + meta_path.string() + "' for writing");
    out << meta.dump(2) << '\n';
}

template <typename Scalar>
SignalSet<Scalar> load_binary(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open signal file '" + path.string() + "'");
    detail::expect_magic(in, "LBAUGSM1");
    const auto n = static_cast<Index>(detail::read_u64(in));
    const auto nv = static_cast<Index>(detail::read_u64(in));
    if (n <= 0 || nv <= 0) throw ParseError("invalid signal matrix dimensions");
    SignalSet<Scalar> out;
    out.data.resize(n, nv);
    for (Index i = 0; i < n; ++i) {
        for (Index v = 0; v < nv; ++v) out.data(i, v) = Scalar(detail::read_f64(in));
    }

    const auto meta_path = sidecar_path(path);
    std::ifstream meta_in(meta_path);
    if (!meta_in) throw Error("missing signal sidecar '" + meta_path.string() + "'");
    std::stringstream buffer;
    buffer << meta_in.rdbuf();
    try {
        const auto meta = nlohmann::json::parse(buffer.str());
        out.labels = meta.at("labels").get<std::vector<int>>();
        if (meta.contains("provenance")) out.provenance = provenance_from_json(meta.at("provenance"));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid signal sidecar '" + meta_path.string() + "': " + e.what());
    }
    return out;
}

} // namespace

template <typename Scalar>
void save_signals(const SignalSet<Scalar>& signals, const std::filesystem::path& path)
{
    validate_signals(signals);
    const auto ext = lower_extension(path);
    if (ext == ".csv") return save_csv(signals, path);
    if (ext == ".bin") return save_binary(signals, path);
    throw Error("unsupported signal file extension '" + ext + "' (use .csv or .bin)");
}

template <typename Scalar>
SignalSet<Scalar> load_signals(const std::filesystem::path& path)
{
    const auto ext = lower_extension(path);
    SignalSet<Scalar> out;
    try {
        if (ext == ".csv") {
            out = load_csv<Scalar>(path);
        } else if (ext == ".bin") {
            out = load_binary<Scalar>(path);
        } else {
            throw Error("unsupported signal file extension '" + ext + "' (use .csv or .bin)");
        }
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    validate_signals(out);
    return out;
}

#define LBAUG_INSTANTIATE(Scalar)                                                        \
    template void validate_signals(const SignalSet<Scalar>&);                            \
    template std::vector<int> class_labels(const SignalSet<Scalar>&);                    \
    template SignalSet<Scalar> select_class(const SignalSet<Scalar>&, int);              \
    template void save_signals(const SignalSet<Scalar>&, const std::filesystem::path&);  \
    template SignalSet<Scalar> load_signals<Scalar>(const std::filesystem::path&);

LBAUG_INSTANTIATE(float)
LBAUG_INSTANTIATE(double)

#undef LBAUG_INSTANTIATE

} // namespace lbaug
