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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lbaug {

struct Provenance
{
    /// "real" or "augmented".
    std::string kind = "real";
    /// "lb-eigda" or "c-pda" for augmented sets; "simulated" for generated data.
    std::string method;
    std::optional<std::uint64_t> seed;
};

///
/// n observations of a scalar field sampled at V vertices. Row i of `data` is observation i;
/// `labels[i]` is its class.
///
template <typename Scalar>
struct SignalSet
{
    MatrixX<Scalar> data;
    std::vector<int> labels;
    Provenance provenance;

    Index size() const { return data.rows(); }
    Index num_vertices() const { return data.cols(); }
};

/// Throws ValidationError on empty data, non-finite entries or a label count mismatch.
template <typename Scalar>
void validate_signals(const SignalSet<Scalar>& signals);

/// Distinct labels in ascending order.
template <typename Scalar>
std::vector<int> class_labels(const SignalSet<Scalar>& signals);

/// Observations carrying `label`, in input order.
template <typename Scalar>
SignalSet<Scalar> select_class(const SignalSet<Scalar>& signals, int label);

///
/// Storage is chosen by extension.
///
/// `.csv`: header "label,v0,v1,...", then one row per observation with the label first.
///
/// `.bin`: little-endian, 8-byte magic "LBAUGSM1", uint64 n, uint64 V, then n*V float64 values
/// in row-major order (observation after observation). Labels and provenance go to a JSON
/// sidecar `<path>.json`: {"labels": [...], "provenance": {"kind", "method", "seed"}}.
///
template <typename Scalar>
void save_signals(const SignalSet<Scalar>& signals, const std::filesystem::path& path);

template <typename Scalar>
SignalSet<Scalar> load_signals(const std::filesystem::path& path);

} // namespace lbaug
