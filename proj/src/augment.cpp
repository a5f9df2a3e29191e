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
#include <lbaug/augment.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>

namespace lbaug {

PermutationPlan make_plan(Index n, Index channels, std::uint64_t seed)
{
    if (n < 2) {
        throw ValidationError(
            "permutation augmentation needs at least 2 observations, got " + std::to_string(n));
    }
    if (channels < 1) throw ValidationError("permutation plan needs at least one channel");
    PermutationPlan plan;
    plan.seed = seed;
    plan.perms.resize(static_cast<std::size_t>(channels));
    for (Index c = 0; c < channels; ++c) {
        auto& perm = plan.perms[static_cast<std::size_t>(c)];
        perm.resize(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), Index(0));
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        std::shuffle(perm.begin(), perm.end(), rng);
    }
    return plan;
}

PermutationPlan identity_plan(Index n, Index channels)
{
    PermutationPlan plan;
    plan.perms.assign(static_cast<std::size_t>(channels), std::vector<Index>(static_cast<std::size_t>(n)));
    for (auto& perm : plan.perms) std::iota(perm.begin(), perm.end(), Index(0));
    return plan;
}

void validate_plan(const PermutationPlan& plan)
{
    const Index n = plan.size();
    std::vector<char> seen;
    for (Index c = 0; c < plan.channels(); ++c) {
        const auto& perm = plan.perms[static_cast<std::size_t>(c)];
        if (static_cast<Index>(perm.size()) != n) {
            throw ValidationError("permutation channel " + std::to_string(c) + " has the wrong length");
        }
        seen.assign(static_cast<std::size_t>(n), 0);
        for (const Index target : perm) {
            if (target < 0 || target >= n || seen[static_cast<std::size_t>(target)]) {
                throw ValidationError(
                    "permutation channel " + std::to_string(c) + " is not a bijection");
            }
            seen[static_cast<std::size_t>(target)] = 1;
        }
    }
}

namespace {

template <typename Scalar>
void check_input(const SignalSet<Scalar>& real, const PermutationPlan& plan, Index channels)
{
    validate_signals(real);
    if (class_labels(real).size() != 1) {
        throw ValidationError("augmentation input mixes class labels; augment each class separately");
    }
    if (plan.channels() != channels) {
        throw ValidationError(
            "permutation plan has " + std::to_string(plan.channels()) + " channels, expected " +
            std::to_string(channels));
    }
    if (plan.size() != real.size()) {
        throw ValidationError(
            "permutation plan covers " + std::to_string(plan.size()) + " observations, input has " +
            std::to_string(real.size()));
    }
    validate_plan(plan);
}

template <typename Scalar>
SignalSet<Scalar> wrap_output(MatrixX<Scalar> data, const SignalSet<Scalar>& real, std::string method, std::uint64_t seed)
{
    SignalSet<Scalar> out;
    out.data = std::move(data);
    out.labels = real.labels;
    out.provenance = {"augmented", std::move(method), seed};
    return out;
}

template <typename Scalar>
void check_bank(const NormalizedOperator<Scalar>& op, const FilterBank<Scalar>& bank)
{
    const double scale = static_cast<double>(op.scale());
    const double bank_max = static_cast<double>(bank.lambda_max);
    if (!(std::abs(scale - bank_max) <= 1e-6 * std::abs(scale))) {
        throw ValidationError(
            "filter bank lambda_max " + std::to_string(bank_max) +
            " does not match the operator scale " + std::to_string(scale));
    }
    if (bank.theta.rows() != bank.num_bands() || bank.num_bands() < 1) {
        throw ValidationError("filter bank has no coefficients; build it with make_bank()");
    }
}

// Row perms[c][i] of the result receives channel c of observation i. Chunks are filtered in
// parallel and scattered in chunk order so the summation order never depends on threads.
template <typename Scalar>
MatrixX<Scalar> scatter_channels(
    const NormalizedOperator<Scalar>& op,
    const FilterBank<Scalar>& bank,
    const MatrixX<Scalar>& data,
    const std::vector<std::vector<Index>>& perms)
{
    const Index n = data.rows();
    const Index nv = data.cols();
    if (nv != op.rows()) {
        throw DimensionError(
            "signals have " + std::to_string(nv) + " vertices, operator has " +
            std::to_string(op.rows()));
    }
    MatrixX<Scalar> out = MatrixX<Scalar>::Zero(n, nv);
    MatrixX<Scalar> centered = data;
    std::size_t first_band = 0;
    if (bank.include_mean) {
        const VectorX<Scalar>& areas = op.areas();
        const VectorX<Scalar> h0 = data * areas / areas.sum();
        centered.colwise() -= h0;
        for (Index i = 0; i < n; ++i) out.row(perms[0][static_cast<std::size_t>(i)]).array() += h0(i);
        first_band = 1;
    }

    const Index bands = bank.num_bands();
    const Index chunk = sweep_chunk_size(nv, bands, bank.order);
    const Index chunks = (n + chunk - 1) / chunk;
    std::exception_ptr failure;
#pragma omp parallel for ordered schedule(dynamic, 1) num_threads(thread_count())
    for (Index c = 0; c < chunks; ++c) {
        const Index begin = c * chunk;
        const Index width = std::min(chunk, n - begin);
        MatrixX<Scalar> filtered;
        bool ok = true;
        try {
            const MatrixX<Scalar> block = centered.middleRows(begin, width).transpose();
            filter_block<Scalar>(op, block, bank.theta, filtered);
        } catch (...) {
            ok = false;
#pragma omp critical(lbaug_failure)
            if (!failure) failure = std::current_exception();
        }
#pragma omp ordered
        if (ok) {
            for (Index l = 0; l < bands; ++l) {
                const auto& perm = perms[first_band + static_cast<std::size_t>(l)];
                const Eigen::Map<const MatrixX<Scalar>> h(filtered.col(l).data(), nv, width);
                for (Index i = 0; i < width; ++i) {
                    out.row(perm[static_cast<std::size_t>(begin + i)]) += h.col(i).transpose();
                }
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

} // namespace

template <typename Scalar>
SignalSet<Scalar> lb_eig_da(
    const EigenBasis<Scalar>& basis,
    const SignalSet<Scalar>& real,
    const PermutationPlan& plan)
{
    check_input(real, plan, basis.size());
    const MatrixX<Scalar> coeffs = forward(basis, real.data);
    MatrixX<Scalar> permuted(coeffs.rows(), coeffs.cols());
    for (Index j = 0; j < coeffs.cols(); ++j) {
        const auto& perm = plan.perms[static_cast<std::size_t>(j)];
        for (Index i = 0; i < coeffs.rows(); ++i) {
            permuted(perm[static_cast<std::size_t>(i)], j) = coeffs(i, j);
        }
    }
    return wrap_output(inverse(basis, permuted), real, "lb-eigda", plan.seed);
}

template <typename Scalar>
SignalSet<Scalar> c_pda(
    const NormalizedOperator<Scalar>& op,
    const FilterBank<Scalar>& bank,
    const SignalSet<Scalar>& real,
    const PermutationPlan& plan)
{
    check_bank(op, bank);
    check_input(real, plan, bank.num_channels());
    return wrap_output(scatter_channels(op, bank, real.data, plan.perms), real, "c-pda", plan.seed);
}

template <typename Scalar>
MatrixX<Scalar> bank_reconstruction(
    const NormalizedOperator<Scalar>& op,
    const FilterBank<Scalar>& bank,
    const MatrixX<Scalar>& signals)
{
    check_bank(op, bank);
    return scatter_channels(op, bank, signals, identity_plan(signals.rows(), bank.num_channels()).perms);
}

template <typename Scalar>
Index plan_channels(const AugmentMethod<Scalar>& method)
{
    if (const auto* eig = std::get_if<LbEigMethod<Scalar>>(&method)) return eig->basis.size();
    return std::get<ChebyshevMethod<Scalar>>(method).bank.num_channels();
}

template <typename Scalar>
SignalSet<Scalar> augment_dataset(
    const SignalSet<Scalar>& real,
    const AugmentMethod<Scalar>& method,
    const std::map<int, Index>& counts,
    std::uint64_t seed)
{
    validate_signals(real);
    const Index channels = plan_channels(method);
    SignalSet<Scalar> out;
    Index total = 0;
    for (const auto& [label, count] : counts) {
        if (count < 0) throw ValidationError("requested count for class " + std::to_string(label) + " is negative");
        total += count;
    }
    out.data.resize(total, real.num_vertices());
    out.labels.reserve(static_cast<std::size_t>(total));
    out.provenance = {
        "augmented", std::holds_alternative<LbEigMethod<Scalar>>(method) ? "lb-eigda" : "c-pda", seed};

    Index row = 0;
    for (const auto& [label, count] : counts) {
        const SignalSet<Scalar> members = select_class(real, label);
        if (members.size() < 2) {
            throw ValidationError(
                "class " + std::to_string(label) + " has " + std::to_string(members.size()) +
                " observations; augmentation needs at least 2");
        }
        const Index rounds = (count + members.size() - 1) / members.size();
        for (Index round = 0; round < rounds; ++round) {
            const PermutationPlan plan = make_plan(
                members.size(), channels,
                derive_seed(seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(label)),
                            static_cast<std::uint64_t>(round)));
            const SignalSet<Scalar> batch = std::visit(
                [&](const auto& m) {
                    using M = std::decay_t<decltype(m)>;
                    if constexpr (std::is_same_v<M, LbEigMethod<Scalar>>) {
                        return lb_eig_da(m.basis, members, plan);
                    } else {
                        return c_pda(m.op, m.bank, members, plan);
                    }
                },
                method);
            const Index take = std::min(batch.size(), count - round * members.size());
            out.data.middleRows(row, take) = batch.data.topRows(take);
            out.labels.insert(out.labels.end(), static_cast<std::size_t>(take), label);
            row += take;
        }
    }
    return out;
}

#define LBAUG_INSTANTIATE(Scalar)                                                                 \
    template SignalSet<Scalar> lb_eig_da(                                                         \
        const EigenBasis<Scalar>&, const SignalSet<Scalar>&, const PermutationPlan&);             \
    template SignalSet<Scalar> c_pda(                                                             \
        const NormalizedOperator<Scalar>&, const FilterBank<Scalar>&, const SignalSet<Scalar>&,   \
        const PermutationPlan&);                                                                  \
    template MatrixX<Scalar> bank_reconstruction(                                                 \
        const NormalizedOperator<Scalar>&, const FilterBank<Scalar>&, const MatrixX<Scalar>&);    \
    template Index plan_channels(const AugmentMethod<Scalar>&);                                   \
    template SignalSet<Scalar> augment_dataset(                                                   \
        const SignalSet<Scalar>&, const AugmentMethod<Scalar>&, const std::map<int, Index>&,      \
        std::uint64_t);

LBAUG_INSTANTIATE(float)
LBAUG_INSTANTIATE(double)

#undef LBAUG_INSTANTIATE

} // namespace lbaug
