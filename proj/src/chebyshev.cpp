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
#include <lbaug/chebyshev.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <numbers>
#include <sstream>

namespace lbaug {

namespace {

template <typename Scalar>
Scalar to_normalized(Scalar lambda, Scalar lambda_max)
{
    return std::clamp(Scalar(2) * lambda / lambda_max - Scalar(1), Scalar(-1), Scalar(1));
}

} // namespace

template <typename Scalar>
VectorX<Scalar> jackson_weights(Index order)
{
    VectorX<Scalar> g(order);
    const double n1 = double(order) + 1;
    const double a = std::numbers::pi / n1;
    for (Index k = 0; k < order; ++k) {
        g(k) = Scalar(
            ((n1 - double(k)) * std::cos(a * double(k)) + std::sin(a * double(k)) / std::tan(a)) / n1);
    }
    return g;
}

template <typename Scalar>
VectorX<Scalar> band_coefficients(
    Scalar lower,
    Scalar upper,
    Scalar lambda_max,
    Index order,
    Damping damping)
{
    if (order < 1) throw ValidationError("Chebyshev order must be >= 1");
    if (!(lambda_max > 0)) throw ValidationError("lambda_max must be positive");
    if (!(lower >= 0 && lower < upper && upper <= lambda_max)) {
        throw ValidationError(
            "invalid band [" + std::to_string(double(lower)) + ", " + std::to_string(double(upper)) +
            "] for lambda_max " + std::to_string(double(lambda_max)));
    }
    // Work in double: the phases k * acos(.) reach several thousand radians.
    const double phi_a = std::acos(double(to_normalized(lower, lambda_max)));
    const double phi_b = std::acos(double(to_normalized(upper, lambda_max)));
    VectorX<Scalar> theta(order);
    theta(0) = Scalar((phi_a - phi_b) / std::numbers::pi);
    for (Index k = 1; k < order; ++k) {
        const double kd = double(k);
        theta(k) = Scalar(2.0 * (std::sin(kd * phi_a) - std::sin(kd * phi_b)) / (kd * std::numbers::pi));
    }
    if (damping == Damping::jackson) theta.array() *= jackson_weights<Scalar>(order).array();
    return theta;
}

template <typename Scalar>
FilterBank<Scalar> make_bank(
    std::vector<Band<Scalar>> bands,
    Scalar lambda_max,
    Index order,
    bool include_mean,
    std::string design,
    Damping damping)
{
    if (bands.empty()) throw ValidationError("filter bank needs at least one band");
    FilterBank<Scalar> bank;
    bank.lambda_max = lambda_max;
    bank.order = order;
    bank.include_mean = include_mean;
    bank.design = std::move(design);
    bank.damping = damping;
    bank.theta.resize(static_cast<Index>(bands.size()), order);
    for (std::size_t l = 0; l < bands.size(); ++l) {
        bank.theta.row(Index(l)) =
            band_coefficients(bands[l].lower, bands[l].upper, lambda_max, order, damping).transpose();
    }
    bank.bands = std::move(bands);
    return bank;
}

template <typename Scalar>
FilterBank<Scalar> design_uniform(Scalar lambda_max, Scalar band_width, Index order, bool include_mean)
{
    if (!(band_width > 0)) throw ValidationError("band width must be positive");
    if (!(band_width < lambda_max)) {
        throw ValidationError("band width must be smaller than lambda_max");
    }
    // Tolerate representation error such as 10.9 / 0.1 = 108.99999999999999.
    const double ratio = double(lambda_max) / double(band_width);
    const auto count = static_cast<Index>(std::ceil(ratio - 1e-9 * ratio));
    std::vector<Band<Scalar>> bands;
    bands.reserve(static_cast<std::size_t>(count));
    for (Index l = 0; l < count; ++l) {
        const Scalar lo = Scalar(l) * band_width;
        const Scalar hi = l + 1 == count ? lambda_max : Scalar(l + 1) * band_width;
        bands.push_back({lo, hi});
    }
    return make_bank(std::move(bands), lambda_max, order, include_mean, "uniform");
}

template <typename Scalar>
FilterBank<Scalar> design_dyadic(Scalar lambda_max, int levels, Index order, bool include_mean)
{
    if (levels < 1 || levels > 12) throw ValidationError("dyadic levels must be in [1, 12]");
    if (!(lambda_max > 0)) throw ValidationError("lambda_max must be positive");
    // Edges ascending; consecutive levels share their boundary edge exactly.
    std::vector<Scalar> edges = {Scalar(0)};
    for (int m = levels; m >= 1; --m) {
        const double top = double(lambda_max) / std::pow(4.0, m - 1);
        const long long count = 1LL << (m + 1);
        const double width = top / double(count);
        const long long first = m == levels ? 1 : count / 4 + 1;
        for (long long i = first; i < count; ++i) edges.push_back(Scalar(width * double(i)));
        edges.push_back(m == 1 ? lambda_max : Scalar(top));
    }
    std::vector<Band<Scalar>> bands;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) bands.push_back({edges[e], edges[e + 1]});
    return make_bank(std::move(bands), lambda_max, order, include_mean, "dyadic");
}

template <typename Scalar>
Scalar transition_width(
    const Eigen::Ref<const VectorX<Scalar>>& coeffs,
    Scalar lambda_max,
    Scalar grid_resolution)
{
    if (!(lambda_max > 0)) throw ValidationError("lambda_max must be positive");
    if (!(grid_resolution > 0) || grid_resolution > Scalar(1e-5) * lambda_max * Scalar(1 + 1e-9)) {
        throw ValidationError("grid resolution must be in (0, 1e-5 lambda_max]");
    }
    const auto points = static_cast<Index>(std::floor(lambda_max / grid_resolution)) + 1;
    const Scalar dx = Scalar(2) * grid_resolution / lambda_max;
    auto x_at = [&](Index i) { return std::min(Scalar(-1) + dx * Scalar(i), Scalar(1)); };
    auto response = [&](Index i) { return chebyshev_sum(coeffs, x_at(i)); };

    Index rise = -1;
    for (Index i = 0; i < points; ++i) {
        if (response(i) >= Scalar(0.5)) {
            rise = i;
            break;
        }
    }
    if (rise <= 0) return 0;

    auto crossing = [&](Index i0, Scalar g0, Scalar g1, Scalar level) {
        return x_at(i0) + (level - g0) / (g1 - g0) * dx;
    };

    Scalar x10 = x_at(0);
    Scalar right = response(rise);
    for (Index i = rise - 1; i >= 0; --i) {
        const Scalar g = response(i);
        if (g <= Scalar(0.1)) {
            x10 = crossing(i, g, right, Scalar(0.1));
            break;
        }
        right = g;
    }
    Scalar x90 = x_at(points - 1);
    Scalar left = response(rise);
    if (left >= Scalar(0.9)) {
        x90 = crossing(rise - 1, response(rise - 1), left, Scalar(0.9));
    } else {
        for (Index i = rise + 1; i < points; ++i) {
            const Scalar g = response(i);
            if (g >= Scalar(0.9)) {
                x90 = crossing(i - 1, left, g, Scalar(0.9));
                break;
            }
            left = g;
        }
    }
    return x90 - x10;
}

template <typename Scalar>
Scalar transition_width(const FilterBank<Scalar>& bank, Index l, Scalar grid_resolution)
{
    if (l < 0 || l >= bank.num_bands()) throw ValidationError("band index out of range");
    const auto& band = bank.bands[static_cast<std::size_t>(l)];
    if (band.upper - band.lower < grid_resolution) {
        throw ValidationError("band " + std::to_string(l) + " is narrower than the grid resolution");
    }
    return transition_width<Scalar>(bank.theta.row(l).transpose(), bank.lambda_max, grid_resolution);
}

template <typename Scalar>
void filter_block(
    const NormalizedOperator<Scalar>& op,
    const Eigen::Ref<const MatrixX<Scalar>>& block,
    const Eigen::Ref<const MatrixX<Scalar>>& theta,
    MatrixX<Scalar>& out)
{
    const Index nv = op.rows();
    const Index m = block.cols();
    const Index order = theta.cols();
    if (block.rows() != nv) {
        throw DimensionError(
            "signal has " + std::to_string(block.rows()) + " vertices, operator has " +
            std::to_string(nv));
    }
    if (order < 1) throw ValidationError("Chebyshev order must be >= 1");

    const Index stride = nv * m;
    const Index kblock = std::min<Index>(64, order);
    MatrixX<Scalar> stored(stride, kblock);
    out.setZero(stride, theta.rows());

    MatrixX<Scalar> prev = MatrixX<Scalar>::Zero(nv, m);
    MatrixX<Scalar> cur = block;
    MatrixX<Scalar> next(nv, m);
    const Scalar limit = Scalar(1e8) * block.cwiseAbs().maxCoeff();

    Index filled = 0;
    Index first = 0;
    for (Index k = 0; k < order; ++k) {
        Eigen::Map<MatrixX<Scalar>>(stored.col(filled).data(), nv, m) = cur;
        ++filled;
        if (filled == kblock || k + 1 == order) {
            for (Index c = 0; c < filled; ++c) {
                const auto column = stored.col(c);
                if (!column.allFinite() || column.cwiseAbs().maxCoeff() > limit) {
                    throw DivergenceError(first + c);
                }
            }
            out.noalias() += stored.leftCols(filled) * theta.middleCols(first, filled).transpose();
            first = k + 1;
            filled = 0;
        }
        if (k + 1 < order) {
            op.apply(cur, next);
            if (k == 0) {
                next -= prev;
            } else {
                next = Scalar(2) * next - prev;
            }
            std::swap(prev, cur);
            std::swap(cur, next);
        }
    }
}

Index sweep_chunk_size(Index num_vertices, Index num_filters, Index order)
{
    const Index per_signal = num_vertices * (std::min<Index>(64, order) + num_filters + 3);
    const Index budget = Index(1) << 24;
    return std::clamp<Index>(budget / std::max<Index>(per_signal, 1), 1, 16);
}

template <typename Scalar>
std::vector<MatrixX<Scalar>> apply_recurrence(
    const NormalizedOperator<Scalar>& op,
    const Eigen::Ref<const MatrixX<Scalar>>& signals,
    const Eigen::Ref<const MatrixX<Scalar>>& theta)
{
    const Index n = signals.rows();
    const Index nv = op.rows();
    if (signals.cols() != nv) {
        throw DimensionError(
            "signals have " + std::to_string(signals.cols()) + " vertices, operator has " +
            std::to_string(nv));
    }
    const Index filters = theta.rows();
    std::vector<MatrixX<Scalar>> result(static_cast<std::size_t>(filters), MatrixX<Scalar>(n, nv));
    const Index chunk = sweep_chunk_size(nv, filters, theta.cols());
    const Index chunks = (n + chunk - 1) / chunk;

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
    for (Index c = 0; c < chunks; ++c) {
        try {
            const Index begin = c * chunk;
            const Index width = std::min(chunk, n - begin);
            const MatrixX<Scalar> block = signals.middleRows(begin, width).transpose();
            MatrixX<Scalar> out;
            filter_block<Scalar>(op, block, theta, out);
            for (Index l = 0; l < filters; ++l) {
                const Eigen::Map<const MatrixX<Scalar>> h(out.col(l).data(), nv, width);
                result[static_cast<std::size_t>(l)].middleRows(begin, width) = h.transpose();
            }
        } catch (...) {
#pragma omp critical(lbaug_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return result;
}

template <typename Scalar>
std::string bank_to_json(const FilterBank<Scalar>& bank)
{
    nlohmann::ordered_json j;
    j["lambda_max"] = double(bank.lambda_max);
    j["K"] = bank.order;
    nlohmann::json bands = nlohmann::json::array();
    for (const auto& b : bank.bands) bands.push_back({double(b.lower), double(b.upper)});
    j["bands"] = bands;
    j["design"] = bank.design;
    j["include_mean"] = bank.include_mean;
    j["damping"] = bank.damping == Damping::jackson ? "jackson" : "none";
    return j.dump(2);
}

template <typename Scalar>
FilterBank<Scalar> bank_from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        std::vector<Band<Scalar>> bands;
        for (const auto& b : j.at("bands")) {
            if (!b.is_array() || b.size() != 2) throw ParseError("each band must be [lower, upper]");
            bands.push_back({Scalar(b[0].get<double>()), Scalar(b[1].get<double>())});
        }
        const std::string damping = j.value("damping", std::string("none"));
        if (damping != "none" && damping != "jackson") {
            throw ParseError("unknown damping '" + damping + "'");
        }
        return make_bank(
            std::move(bands), Scalar(j.at("lambda_max").get<double>()), j.at("K").get<Index>(),
            j.value("include_mean", true), j.value("design", std::string("custom")),
            damping == "jackson" ? Damping::jackson : Damping::none);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid filter bank JSON: ") + e.what());
    }
}

template <typename Scalar>
void save_bank(const FilterBank<Scalar>& bank, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << bank_to_json(bank) << '\n';
}

template <typename Scalar>
FilterBank<Scalar> load_bank(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open filter bank file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return bank_from_json<Scalar>(buffer.str());
}

#define LBAUG_INSTANTIATE(Scalar)                                                                  \
    template VectorX<Scalar> jackson_weights<Scalar>(Index);                                       \
    template VectorX<Scalar> band_coefficients(Scalar, Scalar, Scalar, Index, Damping);            \
    template FilterBank<Scalar> make_bank(                                                         \
        std::vector<Band<Scalar>>, Scalar, Index, bool, std::string, Damping);                     \
    template FilterBank<Scalar> design_uniform(Scalar, Scalar, Index, bool);                       \
    template FilterBank<Scalar> design_dyadic(Scalar, int, Index, bool);                           \
    template Scalar transition_width(const Eigen::Ref<const VectorX<Scalar>>&, Scalar, Scalar);    \
    template Scalar transition_width(const FilterBank<Scalar>&, Index, Scalar);                    \
    template void filter_block(                                                                    \
        const NormalizedOperator<Scalar>&, const Eigen::Ref<const MatrixX<Scalar>>&,               \
        const Eigen::Ref<const MatrixX<Scalar>>&, MatrixX<Scalar>&);                               \
    template std::vector<MatrixX<Scalar>> apply_recurrence(                                        \
        const NormalizedOperator<Scalar>&, const Eigen::Ref<const MatrixX<Scalar>>&,               \
        const Eigen::Ref<const MatrixX<Scalar>>&);                                                 \
    template std::string bank_to_json(const FilterBank<Scalar>&);                                  \
    template FilterBank<Scalar> bank_from_json<Scalar>(const std::string&);                        \
    template void save_bank(const FilterBank<Scalar>&, const std::filesystem::path&);              \
    template FilterBank<Scalar> load_bank<Scalar>(const std::filesystem::path&);

LBAUG_INSTANTIATE(float)
LBAUG_INSTANTIATE(double)

#undef LBAUG_INSTANTIATE

} // namespace lbaug
