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
#include <lbaug/analysis.h>

#include <algorithm>
#include <numeric>

namespace lbaug {

template <typename Scalar>
std::optional<double> pearson(const Eigen::Ref<const RowVectorX<Scalar>>& x, const Eigen::Ref<const RowVectorX<Scalar>>& y)
{
    if (x.size() != y.size()) throw DimensionError("correlation inputs differ in length");
    if (x.size() < 2) return std::nullopt;
    if (x.minCoeff() == x.maxCoeff() || y.minCoeff() == y.maxCoeff()) return std::nullopt;
    const Eigen::ArrayXd a = x.template cast<double>().transpose().array() - double(x.template cast<double>().mean());
    const Eigen::ArrayXd b = y.template cast<double>().transpose().array() - double(y.template cast<double>().mean());
    const double denom = std::sqrt((a * a).sum() * (b * b).sum());
    if (!(denom > 0)) return std::nullopt;
    return (a * b).sum() / denom;
}

template <typename Scalar>
SignalStats compute_stats(const SignalSet<Scalar>& real, const SignalSet<Scalar>& augmented)
{
    if (real.num_vertices() != augmented.num_vertices()) {
        throw DimensionError(
            "real signals have " + std::to_string(real.num_vertices()) +
            " vertices, augmented signals have " + std::to_string(augmented.num_vertices()));
    }
    if (real.size() < 1 || augmented.size() < 1) throw ValidationError("statistics need non-empty signal sets");
    SignalStats stats;
    stats.real_mean = real.data.template cast<double>().colwise().mean().transpose();
    stats.augmented_mean = augmented.data.template cast<double>().colwise().mean().transpose();
    stats.order.resize(static_cast<std::size_t>(real.num_vertices()));
    std::iota(stats.order.begin(), stats.order.end(), Index(0));
    std::stable_sort(stats.order.begin(), stats.order.end(), [&](Index a, Index b) {
        return stats.real_mean(a) > stats.real_mean(b);
    });
    const RowVectorX<double> mean = stats.real_mean.transpose();
    for (Index i = 0; i < real.size(); ++i) {
        stats.real_correlation.push_back(pearson<double>(real.data.row(i).template cast<double>(), mean));
    }
    for (Index i = 0; i < augmented.size(); ++i) {
        stats.augmented_correlation.push_back(
            pearson<double>(augmented.data.row(i).template cast<double>(), mean));
    }
    stats.max_mean_deviation = (stats.augmented_mean - stats.real_mean).cwiseAbs().maxCoeff();
    return stats;
}

template <typename Scalar>
std::map<int, double> class_mean_deviation(const SignalSet<Scalar>& real, const SignalSet<Scalar>& augmented)
{
    if (real.num_vertices() != augmented.num_vertices()) {
        throw DimensionError("real and augmented signals differ in vertex count");
    }
    std::map<int, double> out;
    const auto augmented_labels = class_labels(augmented);
    for (const int label : class_labels(real)) {
        if (!std::binary_search(augmented_labels.begin(), augmented_labels.end(), label)) continue;
        const VectorX<double> a = select_class(real, label).data.template cast<double>().colwise().mean();
        const VectorX<double> b = select_class(augmented, label).data.template cast<double>().colwise().mean();
        out[label] = (a - b).cwiseAbs().maxCoeff();
    }
    return out;
}

#define LBAUG_INSTANTIATE(Scalar)                                                                     \
    template std::optional<double> pearson(                                                           \
        const Eigen::Ref<const RowVectorX<Scalar>>&, const Eigen::Ref<const RowVectorX<Scalar>>&);    \
    template SignalStats compute_stats(const SignalSet<Scalar>&, const SignalSet<Scalar>&);           \
    template std::map<int, double> class_mean_deviation(const SignalSet<Scalar>&, const SignalSet<Scalar>&);

LBAUG_INSTANTIATE(float)
LBAUG_INSTANTIATE(double)

#undef LBAUG_INSTANTIATE

} // namespace lbaug
