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

#include <lbaug/lb_operator.h>

#include <filesystem>
#include <string>
#include <vector>

namespace lbaug {

/// Closed spectral interval [lower, upper] in raw eigenvalue units.
template <typename Scalar>
struct Band
{
    Scalar lower = 0;
    Scalar upper = 0;
};

enum class Damping { none, jackson };

///
/// Bandpass filter bank on the Laplace-Beltrami spectrum.
///
/// Each band is the indicator of [lower, upper], expanded in Chebyshev polynomials of the
/// normalized variable x = 2 lambda / lambda_max - 1 and truncated to `order` terms. Row l of
/// `theta` holds the coefficients of band l. The optional mean channel is not a Chebyshev
/// filter: it is the exact area-weighted average (see c_pda()).
///
template <typename Scalar>
struct FilterBank
{
    Scalar lambda_max = 0;
    Index order = 0;
    std::vector<Band<Scalar>> bands;
    bool include_mean = true;
    std::string design = "custom";
    Damping damping = Damping::none;
    MatrixX<Scalar> theta;

    Index num_bands() const { return static_cast<Index>(bands.size()); }
    /// Bands plus the mean channel when present.
    Index num_channels() const { return num_bands() + (include_mean ? 1 : 0); }
};

///
/// Chebyshev coefficients of the indicator of [lower, upper] (raw units) on [0, lambda_max]:
/// with a = 2 lower / lambda_max - 1, b = 2 upper / lambda_max - 1,
///   theta_0 = (acos a - acos b) / pi,
///   theta_k = 2 (sin(k acos a) - sin(k acos b)) / (k pi),  k >= 1.
///
/// @throws ValidationError unless 0 <= lower < upper <= lambda_max and order >= 1.
///
template <typename Scalar>
VectorX<Scalar> band_coefficients(
    Scalar lower,
    Scalar upper,
    Scalar lambda_max,
    Index order,
    Damping damping = Damping::none);

/// Jackson kernel multipliers for a truncation with `order` terms.
template <typename Scalar>
VectorX<Scalar> jackson_weights(Index order);

/// sum_k coeffs_k T_k(x) by Clenshaw's recurrence, x in [-1, 1].
template <typename Scalar, typename Derived>
Scalar chebyshev_sum(const Eigen::MatrixBase<Derived>& coeffs, Scalar x)
{
    Scalar b1 = 0, b2 = 0;
    for (Index k = coeffs.size() - 1; k >= 1; --k) {
        const Scalar b0 = coeffs(k) + 2 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return coeffs(0) + x * b1 - b2;
}

/// Validates the bands and computes theta.
template <typename Scalar>
FilterBank<Scalar> make_bank(
    std::vector<Band<Scalar>> bands,
    Scalar lambda_max,
    Index order,
    bool include_mean = true,
    std::string design = "custom",
    Damping damping = Damping::none);

///
/// Contiguous bands [0, w], [w, 2w], ... covering [0, lambda_max]; the last band is clipped
/// at lambda_max.
///
/// @throws ValidationError when band_width <= 0 or band_width >= lambda_max.
///
template <typename Scalar>
FilterBank<Scalar> design_uniform(
    Scalar lambda_max,
    Scalar band_width,
    Index order,
    bool include_mean = true);

///
/// Dyadic bank: for m = 1..levels, [0, lambda_max / 4^(m-1)] is split into 2^(m+1) equal
/// bands; level m keeps the bands whose lower edge is >= lambda_max / 4^m (the finest level
/// keeps all). The result tiles (0, lambda_max]; levels = 5 gives 109 bands.
///
template <typename Scalar>
FilterBank<Scalar> design_dyadic(Scalar lambda_max, int levels, Index order, bool include_mean = true);

///
/// Width, in normalized units, between the 10% and 90% crossings of the response at its
/// rising (lower) edge. The response is evaluated on a grid of step `grid_resolution` (raw
/// units, at most 1e-5 lambda_max) over [0, lambda_max] with linear interpolation between
/// grid points. A response that starts at or above 0.5 has no lower transition and yields 0.
///
template <typename Scalar>
Scalar transition_width(
    const Eigen::Ref<const VectorX<Scalar>>& coeffs,
    Scalar lambda_max,
    Scalar grid_resolution);

/// Same for band `l` of a bank. Throws when the band is narrower than the grid.
template <typename Scalar>
Scalar transition_width(const FilterBank<Scalar>& bank, Index l, Scalar grid_resolution);

///
/// Filters a block of signals with every row of `theta` in one shared recurrence sweep.
///
/// `block` is V x m (one signal per column). On return `out` is (V * m) x L: column l holds
/// the column-major stacking of sum_k theta(l, k) T_k(op) block. T_k is built by
/// T_{k+1} = (2 - delta_k0) op T_k - T_{k-1}, T_{-1} = 0, T_0 = block, and the filter sums
/// are accumulated in blocks of k with a dense product.
///
/// @throws DivergenceError naming k when T_k becomes non-finite or grows by more than 1e8.
///
template <typename Scalar>
void filter_block(
    const NormalizedOperator<Scalar>& op,
    const Eigen::Ref<const MatrixX<Scalar>>& block,
    const Eigen::Ref<const MatrixX<Scalar>>& theta,
    MatrixX<Scalar>& out);

///
/// h_l = sum_k theta(l, k) T_k(op) f for every row l of `theta` and every observation (row)
/// of `signals` (n x V). Returns L matrices of size n x V. Observations are processed in
/// parallel; results do not depend on the thread count.
///
template <typename Scalar>
std::vector<MatrixX<Scalar>> apply_recurrence(
    const NormalizedOperator<Scalar>& op,
    const Eigen::Ref<const MatrixX<Scalar>>& signals,
    const Eigen::Ref<const MatrixX<Scalar>>& theta);

/// Signals per chunk used by the parallel sweeps for a mesh with V vertices and L filters.
Index sweep_chunk_size(Index num_vertices, Index num_filters, Index order);

///
/// JSON: {"lambda_max": s, "K": order, "bands": [[a, b], ...], "design": "uniform"|"dyadic"|...,
/// "include_mean": bool, "damping": "none"|"jackson"}. theta is recomputed on load.
///
template <typename Scalar>
void save_bank(const FilterBank<Scalar>& bank, const std::filesystem::path& path);

template <typename Scalar>
FilterBank<Scalar> load_bank(const std::filesystem::path& path);

template <typename Scalar>
std::string bank_to_json(const FilterBank<Scalar>& bank);

template <typename Scalar>
FilterBank<Scalar> bank_from_json(const std::string& text);

} // namespace lbaug
