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
#include <lbaug/signals.h>

#include <cstdint>
#include <vector>

namespace lbaug {

///
/// Two-group synthetic experiment: every vertex of every observation is N(0, sigma^2); the m
/// Group-1 observations additionally carry `signal_level` on the patch vertices.
///
struct SimulationConfig
{
    Index n = 0;
    Index m = 0;
    double sigma = 1;
    std::vector<Index> patch;
    double signal_level = 1;
    std::uint64_t seed = 0;
};

///
/// Rows 0..n-1 are Group 0 (label 0), rows n..n+m-1 are Group 1 (label 1). Observation i draws
/// its noise from std::mt19937_64 seeded with derive_seed(seed, i), so the output is identical
/// for any thread count.
///
/// @throws ValidationError for n or m < 1, sigma <= 0, an empty patch or a patch index outside
///         [0, V).
///
template <typename Scalar>
SignalSet<Scalar> generate(const TriMesh<Scalar>& mesh, const SimulationConfig& config);

/// Vertices within `hops` edges of `center`, in ascending order.
template <typename Scalar>
std::vector<Index> select_patch(const TriMesh<Scalar>& mesh, Index center, int hops);

} // namespace lbaug
