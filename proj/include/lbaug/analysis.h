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

#include <lbaug/signals.h>

#include <map>
#include <optional>
#include <vector>

namespace lbaug {

/// Pearson correlation; empty when either input is constant.
template <typename Scalar>
std::optional<double> pearson(const Eigen::Ref<const RowVectorX<Scalar>>& x, const Eigen::Ref<const RowVectorX<Scalar>>& y);

struct SignalStats
{
    /// Per-vertex means over all observations.
    VectorX<double> real_mean;
    VectorX<double> augmented_mean;
    /// Vertices sorted by descending real mean (ties by index).
    std::vector<Index> order;
    /// Correlation of each observation against the real per-vertex mean.
    std::vector<std::optional<double>> real_correlation;
    std::vector<std::optional<double>> augmented_correlation;
    /// max_v |augmented_mean(v) - real_mean(v)|.
    double max_mean_deviation = 0;
};

/// @throws DimensionError when the vertex counts differ.
template <typename Scalar>
SignalStats compute_stats(const SignalSet<Scalar>& real, const SignalSet<Scalar>& augmented);

/// Max per-vertex mean deviation for every label present in both sets.
template <typename Scalar>
std::map<int, double> class_mean_deviation(const SignalSet<Scalar>& real, const SignalSet<Scalar>& augmented);

} // namespace lbaug
