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

#include <lbaug/chebyshev.h>
#include <lbaug/signals.h>
#include <lbaug/spectrum.h>

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

namespace lbaug {

///
/// One permutation of {0, ..., n-1} per channel. Channel c moves observation i to output row
/// perms[c][i]. Channel c is drawn by std::shuffle with std::mt19937_64 seeded with
/// derive_seed(seed, c), so plans are reproducible and channels are independent.
///
struct PermutationPlan
{
    std::uint64_t seed = 0;
    std::vector<std::vector<Index>> perms;

    Index channels() const { return static_cast<Index>(perms.size()); }
    Index size() const { return perms.empty() ? 0 : static_cast<Index>(perms.front().size()); }
};

/// @throws ValidationError if n < 2 or channels < 1.
PermutationPlan make_plan(Index n, Index channels, std::uint64_t seed);

/// Plan whose channels are all the identity.
PermutationPlan identity_plan(Index n, Index channels);

/// Throws ValidationError unless every channel is a bijection on {0, ..., n-1}.
void validate_plan(const PermutationPlan& plan);

///
/// LB-eigDA: forward transform, move coefficient (i, j) to row perms[j][i], inverse transform.
/// Output rows keep the input class label. With basis size J < V the output lies in the span
/// of the first J eigenfunctions.
///
/// @throws ValidationError for mixed labels or a plan without exactly J channels.
///
template <typename Scalar>
SignalSet<Scalar> lb_eig_da(
    const EigenBasis<Scalar>& basis,
    const SignalSet<Scalar>& real,
    const PermutationPlan& plan);

///
/// C-pDA. Channel 0 carries the exact area-weighted mean h_0 of each observation; channel l
/// (1..L) carries band l-1 applied to the mean-removed signal. Output row perms[l][i] receives
/// channel l of observation i. All bands are evaluated in one fused Chebyshev sweep per block
/// of observations; results do not depend on the thread count.
///
/// Banks without a mean channel use L channels and filter the raw signal.
///
/// @throws ValidationError for mixed labels, a plan with the wrong channel count, or a bank
///         whose lambda_max differs from op.scale() by more than 1e-6 relative.
///
template <typename Scalar>
SignalSet<Scalar> c_pda(
    const NormalizedOperator<Scalar>& op,
    const FilterBank<Scalar>& bank,
    const SignalSet<Scalar>& real,
    const PermutationPlan& plan);

/// h_0 + sum_l g_l(op) f for each observation: C-pDA under the identity plan.
template <typename Scalar>
MatrixX<Scalar> bank_reconstruction(
    const NormalizedOperator<Scalar>& op,
    const FilterBank<Scalar>& bank,
    const MatrixX<Scalar>& signals);

template <typename Scalar>
struct LbEigMethod
{
    const EigenBasis<Scalar>& basis;
};

template <typename Scalar>
struct ChebyshevMethod
{
    const NormalizedOperator<Scalar>& op;
    const FilterBank<Scalar>& bank;
};

template <typename Scalar>
using AugmentMethod = std::variant<LbEigMethod<Scalar>, ChebyshevMethod<Scalar>>;

/// Channels a plan needs for the given method.
template <typename Scalar>
Index plan_channels(const AugmentMethod<Scalar>& method);

///
/// Augments each class separately. For class c with n_c members and requested count r_c,
/// ceil(r_c / n_c) rounds run with plans seeded derive_seed(seed, c, round); the first r_c
/// generated rows are kept. Classes appear in ascending label order. Classes absent from
/// `counts` are skipped.
///
/// @throws ValidationError if a requested class has fewer than 2 members or is missing.
///
template <typename Scalar>
SignalSet<Scalar> augment_dataset(
    const SignalSet<Scalar>& real,
    const AugmentMethod<Scalar>& method,
    const std::map<int, Index>& counts,
    std::uint64_t seed);

} // namespace lbaug
