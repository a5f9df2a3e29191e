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
#include <lbaug/simulate.h>

#include <algorithm>
#include <deque>
#include <random>

namespace lbaug {

template <typename Scalar>
SignalSet<Scalar> generate(const TriMesh<Scalar>& mesh, const SimulationConfig& config)
{
    const Index nv = mesh.num_vertices();
    if (config.n < 1 || config.m < 1) throw ValidationError("simulation needs n >= 1 and m >= 1");
    if (!(config.sigma > 0)) throw ValidationError("simulation sigma must be positive");
    if (config.patch.empty()) throw ValidationError("simulation patch is empty");
    for (const Index v : config.patch) {
        if (v < 0 || v >= nv) {
            throw ValidationError(
                "patch vertex " + std::to_string(v) + " is outside [0, " + std::to_string(nv) + ")");
        }
    }

    const Index total = config.n + config.m;
    SignalSet<Scalar> out;
    out.data.resize(total, nv);
    out.labels.resize(static_cast<std::size_t>(total));
    out.provenance = {"real", "simulated", config.seed};

#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (Index i = 0; i < total; ++i) {
        std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(i)));
        std::normal_distribution<double> noise(0.0, config.sigma);
        for (Index v = 0; v < nv; ++v) out.data(i, v) = Scalar(noise(rng));
        const bool group1 = i >= config.n;
        out.labels[static_cast<std::size_t>(i)] = group1 ? 1 : 0;
        if (group1) {
            for (const Index v : config.patch) out.data(i, v) += Scalar(config.signal_level);
        }
    }
    return out;
}

template <typename Scalar>
std::vector<Index> select_patch(const TriMesh<Scalar>& mesh, Index center, int hops)
{
    const Index nv = mesh.num_vertices();
    if (center < 0 || center >= nv) {
        throw ValidationError("patch center " + std::to_string(center) + " is not a vertex");
    }
    if (hops < 0) throw ValidationError("patch radius must be >= 0 hops");
    const auto adjacency = vertex_adjacency(mesh);
    std::vector<int> depth(static_cast<std::size_t>(nv), -1);
    std::deque<Index> queue{center};
    depth[static_cast<std::size_t>(center)] = 0;
    std::vector<Index> patch;
    while (!queue.empty()) {
        const Index v = queue.front();
        queue.pop_front();
        patch.push_back(v);
        const int d = depth[static_cast<std::size_t>(v)];
        if (d == hops) continue;
        for (const Index w : adjacency[static_cast<std::size_t>(v)]) {
            if (depth[static_cast<std::size_t>(w)] < 0) {
                depth[static_cast<std::size_t>(w)] = d + 1;
                queue.push_back(w);
            }
        }
    }
    std::sort(patch.begin(), patch.end());
    return patch;
}

#define LBAUG_INSTANTIATE(Scalar)                                                    \
    template SignalSet<Scalar> generate(const TriMesh<Scalar>&, const SimulationConfig&); \
    template std::vector<Index> select_patch(const TriMesh<Scalar>&, Index, int);

LBAUG_INSTANTIATE(float)
LBAUG_INSTANTIATE(double)

#undef LBAUG_INSTANTIATE

} // namespace lbaug
