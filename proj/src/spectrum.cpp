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
#include <lbaug/spectrum.h>
#include "binary_io.h"

#include <Eigen/SparseCholesky>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

namespace lbaug {

namespace {

template <typename Scalar>
void fix_signs(MatrixX<Scalar>& vectors)
{
    for (Index j = 0; j < vectors.cols(); ++j) {
        Index imax = 0;
        vectors.col(j).cwiseAbs().maxCoeff(&imax);
        if (vectors(imax, j) < 0) vectors.col(j) = -vectors.col(j);
    }
}

// LAPACK ?syevr on a column-major symmetric matrix: eigenpairs first..last (0-based, ascending).
// `a` is overwritten.
lapack_int syevr(MatrixX<double>& a, lapack_int first, lapack_int last, VectorX<double>& w, MatrixX<double>& z)
{
    const auto n = static_cast<lapack_int>(a.rows());
    lapack_int found = 0;
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(std::max<lapack_int>(n, 1)));
    w.resize(n);
    z.resize(n, last - first + 1);
    return LAPACKE_dsyevr(
        LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0, 0.0, first + 1, last + 1, 0.0, &found, w.data(),
        z.data(), n, support.data());
}

lapack_int syevr(MatrixX<float>& a, lapack_int first, lapack_int last, VectorX<float>& w, MatrixX<float>& z)
{
    const auto n = static_cast<lapack_int>(a.rows());
    lapack_int found = 0;
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(std::max<lapack_int>(n, 1)));
    w.resize(n);
    z.resize(n, last - first + 1);
    return LAPACKE_ssyevr(
        LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0f, 0.0f, first + 1, last + 1, 0.0f, &found, w.data(),
        z.data(), n, support.data());
}

/// Eigenpairs first..last of a symmetric matrix, ascending. Only the upper triangle is read.
template <typename Scalar>
void symmetric_eigen(MatrixX<Scalar> a, Index first, Index last, VectorX<Scalar>& values, MatrixX<Scalar>& vectors)
{
    VectorX<Scalar> w;
    const lapack_int info =
        syevr(a, static_cast<lapack_int>(first), static_cast<lapack_int>(last), w, vectors);
    if (info != 0) {
        throw ConvergenceError("dense symmetric eigensolver failed (info " + std::to_string(info) + ")", 0.0, 0.0);
    }
    values = w.head(last - first + 1);
}

template <typename Scalar>
EigenBasis<Scalar> dense_eigendecompose(const LBOperator<Scalar>& op, Index count)
{
    const VectorX<Scalar> inv_sqrt = op.areas.cwiseSqrt().cwiseInverse();
    MatrixX<Scalar> sym = MatrixX<Scalar>(inv_sqrt.asDiagonal() * op.stiffness * inv_sqrt.asDiagonal());
    EigenBasis<Scalar> basis;
    MatrixX<Scalar> vectors;
    symmetric_eigen(std::move(sym), 0, count - 1, basis.eigenvalues, vectors);
    basis.eigenvectors = inv_sqrt.asDiagonal() * vectors;
    basis.areas = op.areas;
    fix_signs(basis.eigenvectors);
    return basis;
}

// Shift-invert block Lanczos in the A inner product. The operator M = (C + s A)^{-1} A is
// self-adjoint under <x, y> = x^T A y; its largest eigenvalues 1 / (lambda + s) correspond to
// the smallest lambda. The Krylov basis only grows, so a failed Ritz check resumes where the
// previous one stopped.
template <typename Scalar>
class ShiftInvertLanczos
{
public:
    ShiftInvertLanczos(const LBOperator<Scalar>& op, const EigenOptions& options)
        : m_op(op)
        , m_options(options)
        , m_rng(0x1a2b3c4d)
    {
        // Gershgorin bound on lambda_max of A^{-1} C.
        Scalar bound = 0;
        for (Index i = 0; i < op.num_vertices(); ++i) {
            bound = std::max(bound, 2 * op.stiffness.coeff(i, i) / op.areas(i));
        }
        m_shift = Scalar(1e-6) * bound;
        Eigen::SparseMatrix<Scalar> shifted = op.stiffness;
        for (Index i = 0; i < op.num_vertices(); ++i) shifted.coeffRef(i, i) += m_shift * op.areas(i);
        m_solver.compute(shifted);
        if (m_solver.info() != Eigen::Success) {
            throw ConvergenceError("factorization of shifted operator failed", 0.0, 0.0);
        }
        const Index b = std::min(std::max<Index>(options.block_size, 1), op.num_vertices());
        m_next.resize(op.num_vertices(), b);
        random_fill(m_next);
    }

    Index size() const { return m_size; }

    /// Extends the A-orthonormal Krylov basis to `target` columns.
    void grow(Index target)
    {
        const Index n = m_op.num_vertices();
        target = std::min(target, n);
        if (m_basis.cols() < target) {
            const Index old = m_basis.cols();
            m_basis.conservativeResize(n, target);
            m_projected.conservativeResize(target, target);
            m_projected.rightCols(target - old).setZero();
            m_projected.bottomRows(target - old).setZero();
        }
        const auto& area = m_op.areas;
        while (m_size < target) {
            const Index width = std::min<Index>(m_next.cols(), target - m_size);
            m_basis.middleCols(m_size, width) = m_next.leftCols(width);
            orthonormalize(m_size, width);

            const Index prev = m_size + width;
            MatrixX<Scalar> w = m_solver.solve(area.asDiagonal() * m_basis.middleCols(m_size, width));
            MatrixX<Scalar> coef = MatrixX<Scalar>::Zero(prev, width);
            for (int pass = 0; pass < 2; ++pass) {
                const MatrixX<Scalar> c = m_basis.leftCols(prev).transpose() * (area.asDiagonal() * w);
                w.noalias() -= m_basis.leftCols(prev) * c;
                coef += c;
            }
            m_projected.block(0, m_size, prev, width) = coef;
            m_size = prev;
            m_next = std::move(w);
        }
    }

    /// Rayleigh-Ritz on the current basis. Returns false when some requested pair misses the
    /// tolerance.
    bool ritz(Index count, EigenBasis<Scalar>& out, double& worst) const
    {
        const Index m = m_size;
        // Entries on and above the diagonal are exact projections Q^T A M Q.
        VectorX<Scalar> values;
        MatrixX<Scalar> vectors;
        symmetric_eigen(MatrixX<Scalar>(m_projected.topLeftCorner(m, m)), m - count, m - 1, values, vectors);

        // Largest Ritz values of M are the smallest lambda; values are ascending.
        out.eigenvalues.resize(count);
        MatrixX<Scalar> coords(m, count);
        for (Index j = 0; j < count; ++j) {
            const Index src = count - 1 - j;
            out.eigenvalues(j) = Scalar(1) / values(src) - m_shift;
            coords.col(j) = vectors.col(src);
        }
        out.eigenvectors = m_basis.leftCols(m) * coords;
        out.areas = m_op.areas;

        const MatrixX<Scalar> cpsi = m_op.stiffness * out.eigenvectors;
        const MatrixX<Scalar> apsi = m_op.areas.asDiagonal() * out.eigenvectors;
        worst = 0;
        bool ok = true;
        for (Index j = 0; j < count; ++j) {
            const double res = static_cast<double>((cpsi.col(j) - out.eigenvalues(j) * apsi.col(j)).norm());
            const double scale = static_cast<double>(cpsi.col(j).norm() + m_shift * apsi.col(j).norm());
            worst = std::max(worst, res / scale);
            if (!(res <= m_options.tolerance * scale)) ok = false;
        }
        return ok;
    }

private:
    void random_fill(Eigen::Ref<MatrixX<Scalar>> block)
    {
        std::normal_distribution<double> gauss;
        for (Index c = 0; c < block.cols(); ++c) {
            for (Index i = 0; i < block.rows(); ++i) block(i, c) = Scalar(gauss(m_rng));
        }
    }

    Scalar a_norm(Index c) const
    {
        return std::sqrt(m_basis.col(c).dot(m_op.areas.cwiseProduct(m_basis.col(c))));
    }

    // Columns [col, col + width) are already A-orthogonal to the earlier basis up to rounding.
    // Gram-Schmidt within the block; a column that loses most of its norm is projected against
    // the whole basis again, and a collapsed one is replaced by a random vector.
    void orthonormalize(Index col, Index width)
    {
        const auto& area = m_op.areas;
        auto project = [&](Index c, Index from) {
            for (int pass = 0; pass < 2 && c > from; ++pass) {
                const VectorX<Scalar> weighted = area.cwiseProduct(m_basis.col(c));
                m_basis.col(c) -= m_basis.middleCols(from, c - from) *
                                  (m_basis.middleCols(from, c - from).transpose() * weighted);
            }
        };
        const Scalar tiny = Scalar(1e3) * std::numeric_limits<Scalar>::epsilon();
        for (Index c = col; c < col + width; ++c) {
            Scalar original = a_norm(c);
            project(c, col);
            Scalar norm = a_norm(c);
            if (!(norm > Scalar(0.1) * original)) {
                project(c, 0);
                norm = a_norm(c);
            }
            // Krylov space exhausted in this direction: continue with a fresh vector.
            for (int attempt = 0; attempt < 8 && !(norm > tiny * original); ++attempt) {
                random_fill(m_basis.col(c));
                original = a_norm(c);
                project(c, 0);
                norm = a_norm(c);
            }
            m_basis.col(c) /= norm;
        }
    }

    const LBOperator<Scalar>& m_op;
    EigenOptions m_options;
    std::mt19937_64 m_rng;
    Scalar m_shift = 0;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<Scalar>> m_solver;
    MatrixX<Scalar> m_basis;
    MatrixX<Scalar> m_projected;
    MatrixX<Scalar> m_next;
    Index m_size = 0;
};

template <typename Scalar>
void sort_ascending(EigenBasis<Scalar>& basis)
{
    std::vector<Index> order(static_cast<std::size_t>(basis.size()));
    std::iota(order.begin(), order.end(), Index(0));
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return basis.eigenvalues(a) < basis.eigenvalues(b);
    });
    VectorX<Scalar> values(basis.size());
    MatrixX<Scalar> vectors(basis.num_vertices(), basis.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        values(Index(k)) = basis.eigenvalues(order[k]);
        vectors.col(Index(k)) = basis.eigenvectors.col(order[k]);
    }
    basis.eigenvalues = std::move(values);
    basis.eigenvectors = std::move(vectors);
}

} // namespace

template <typename Scalar>
EigenBasis<Scalar> eigendecompose(const LBOperator<Scalar>& op, Index count, const EigenOptions& options)
{
    const Index n = op.num_vertices();
    if (count < 1 || count > n) {
        throw ValidationError(
            "requested " + std::to_string(count) + " eigenpairs; must be in [1, " +
            std::to_string(n) + "]");
    }
    if (n <= options.dense_threshold) return dense_eigendecompose(op, count);

    ShiftInvertLanczos<Scalar> lanczos(op, options);
    const Index b = std::max<Index>(options.block_size, 1);
    auto round_up = [b](Index x) { return (x + b - 1) / b * b; };
    Index subspace = round_up(
        count + std::max<Index>(2 * b, Index(std::ceil(10 * std::sqrt(double(count))))));
    double worst = 0;
    for (;;) {
        subspace = std::min(subspace, n);
        lanczos.grow(subspace);
        EigenBasis<Scalar> basis;
        if (lanczos.ritz(count, basis, worst)) {
            sort_ascending(basis);
            fix_signs(basis.eigenvectors);
            return basis;
        }
        if (lanczos.size() >= n) {
            // A full Krylov basis should be exact; rounding can still spoil a few residuals.
            return dense_eigendecompose(op, count);
        }
        subspace = round_up(subspace + subspace / 2);
    }
}

template <typename Scalar>
void save_basis(const EigenBasis<Scalar>& basis, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out.write("LBAUGEB1", 8);
    detail::write_u64(out, static_cast<std::uint64_t>(basis.num_vertices()));
    detail::write_u64(out, static_cast<std::uint64_t>(basis.size()));
    for (Index j = 0; j < basis.size(); ++j) detail::write_f64(out, double(basis.eigenvalues(j)));
    for (Index j = 0; j < basis.size(); ++j) {
        for (Index i = 0; i < basis.num_vertices(); ++i) {
            detail::write_f64(out, double(basis.eigenvectors(i, j)));
        }
    }
    for (Index i = 0; i < basis.num_vertices(); ++i) detail::write_f64(out, double(basis.areas(i)));
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

template <typename Scalar>
EigenBasis<Scalar> load_basis(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open eigenbasis file '" + path.string() + "'");
    detail::expect_magic(in, "LBAUGEB1");
    const auto nv = static_cast<Index>(detail::read_u64(in));
    const auto nj = static_cast<Index>(detail::read_u64(in));
    if (nv <= 0 || nj <= 0 || nj > nv) throw ParseError("invalid eigenbasis dimensions");
    EigenBasis<Scalar> basis;
    basis.eigenvalues.resize(nj);
    basis.eigenvectors.resize(nv, nj);
    basis.areas.resize(nv);
    for (Index j = 0; j < nj; ++j) basis.eigenvalues(j) = Scalar(detail::read_f64(in));
    for (Index j = 0; j < nj; ++j) {
        for (Index i = 0; i < nv; ++i) basis.eigenvectors(i, j) = Scalar(detail::read_f64(in));
    }
    for (Index i = 0; i < nv; ++i) basis.areas(i) = Scalar(detail::read_f64(in));
    return basis;
}

#define LBAUG_INSTANTIATE(Scalar)                                                                 \
    template EigenBasis<Scalar> eigendecompose(const LBOperator<Scalar>&, Index, const EigenOptions&); \
    template void save_basis(const EigenBasis<Scalar>&, const std::filesystem::path&);            \
    template EigenBasis<Scalar> load_basis<Scalar>(const std::filesystem::path&);

LBAUG_INSTANTIATE(float)
LBAUG_INSTANTIATE(double)

#undef LBAUG_INSTANTIATE

} // namespace lbaug
