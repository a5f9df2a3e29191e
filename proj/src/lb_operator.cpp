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
#include <lbaug/lb_operator.h>
#include "text_util.h"

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include <cmath>
#include <fstream>
#include <random>

namespace lbaug {

template <typename Scalar>
LBOperator<Scalar> assemble(const TriMesh<Scalar>& mesh)
{
    using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
    const Index nv = mesh.num_vertices();
    const Index nt = mesh.num_triangles();

    std::vector<Eigen::Triplet<Scalar>> triplets;
    triplets.reserve(static_cast<std::size_t>(6 * nt));
    VectorX<Scalar> areas = VectorX<Scalar>::Zero(nv);

    for (Index t = 0; t < nt; ++t) {
        std::array<Index, 3> idx{};
        std::array<Vec3, 3> p;
        for (int c = 0; c < 3; ++c) {
            idx[c] = mesh.triangles(t, c);
            if (idx[c] < 0 || idx[c] >= nv) {
                throw ValidationError("triangle " + std::to_string(t) + " has an out-of-range index");
            }
            p[c] = mesh.vertices.row(idx[c]).transpose();
        }
        const Scalar double_area = (p[1] - p[0]).cross(p[2] - p[0]).norm();
        if (!(static_cast<double>(double_area) / 2 > degenerate_area)) {
            throw ValidationError(
                "cannot assemble Laplace-Beltrami operator: triangle " + std::to_string(t) +
                " is degenerate (zero area)");
        }
        const Scalar area = double_area / 2;

        // Corner c sits opposite edge (c+1, c+2).
        std::array<Scalar, 3> cot{};
        std::array<Scalar, 3> dot{};
        for (int c = 0; c < 3; ++c) {
            const Vec3 u = p[(c + 1) % 3] - p[c];
            const Vec3 v = p[(c + 2) % 3] - p[c];
            dot[c] = u.dot(v);
            cot[c] = dot[c] / double_area;
        }
        for (int c = 0; c < 3; ++c) {
            const Index i = idx[(c + 1) % 3];
            const Index j = idx[(c + 2) % 3];
            const Scalar w = -cot[c] / 2;
            triplets.emplace_back(i, j, w);
            triplets.emplace_back(j, i, w);
        }

        int obtuse = -1;
        for (int c = 0; c < 3; ++c) {
            if (dot[c] < 0) obtuse = c;
        }
        if (obtuse < 0) {
            for (int c = 0; c < 3; ++c) {
                const int a = (c + 1) % 3;
                const int b = (c + 2) % 3;
                // Voronoi share: (|PQ|^2 cot R + |PR|^2 cot Q) / 8
                areas(idx[c]) += ((p[a] - p[c]).squaredNorm() * cot[b] +
                                  (p[b] - p[c]).squaredNorm() * cot[a]) /
                                 8;
            }
        } else {
            for (int c = 0; c < 3; ++c) {
                areas(idx[c]) += c == obtuse ? area / 2 : area / 4;
            }
        }
    }

    SparseMatrix<Scalar> offdiag(nv, nv);
    offdiag.setFromTriplets(triplets.begin(), triplets.end());

    std::vector<Eigen::Triplet<Scalar>> full;
    full.reserve(static_cast<std::size_t>(offdiag.nonZeros() + nv));
    for (Index i = 0; i < nv; ++i) {
        Scalar diag = 0;
        for (typename SparseMatrix<Scalar>::InnerIterator it(offdiag, i); it; ++it) {
            full.emplace_back(i, it.col(), it.value());
            diag -= it.value();
        }
        full.emplace_back(i, i, diag);
    }

    LBOperator<Scalar> op;
    op.stiffness.resize(nv, nv);
    op.stiffness.setFromTriplets(full.begin(), full.end());
    op.stiffness.makeCompressed();
    op.areas = std::move(areas);
    for (Index i = 0; i < nv; ++i) {
        if (!(op.areas(i) > 0)) {
            throw ValidationError("vertex " + std::to_string(i) + " has non-positive area");
        }
    }
    return op;
}

template <typename Scalar>
Scalar spectral_radius(LBOperator<Scalar>& op, Scalar tol, int max_restarts)
{
    if (!(tol > 0) || tol > Scalar(1e-2)) {
        throw ValidationError("spectral radius tolerance must lie in (0, 1e-2]");
    }
    const Index n = op.num_vertices();
    const VectorX<Scalar> inv_sqrt = op.areas.cwiseSqrt().cwiseInverse();
    const SparseMatrix<Scalar> sym = inv_sqrt.asDiagonal() * op.stiffness * inv_sqrt.asDiagonal();

    const Index steps = std::min<Index>(n, 48);
    MatrixX<Scalar> basis(n, steps);
    VectorX<Scalar> alpha(steps), beta(steps);

    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    VectorX<Scalar> start(n);
    for (Index i = 0; i < n; ++i) start(i) = Scalar(unif(rng));
    start.normalize();

    Scalar estimate = 0;
    Scalar residual = std::numeric_limits<Scalar>::infinity();
    for (int restart = 0; restart <= max_restarts; ++restart) {
        basis.col(0) = start;
        Index m = 0;
        for (; m < steps; ++m) {
            VectorX<Scalar> w = sym * basis.col(m);
            alpha(m) = basis.col(m).dot(w);
            // Two passes of full reorthogonalization.
            for (int pass = 0; pass < 2; ++pass) {
                w -= basis.leftCols(m + 1) * (basis.leftCols(m + 1).transpose() * w);
            }
            beta(m) = w.norm();
            if (m + 1 < steps) {
                if (beta(m) <= std::numeric_limits<Scalar>::epsilon() * std::abs(alpha(m)) * 16) {
                    ++m;
                    break;
                }
                basis.col(m + 1) = w / beta(m);
            }
        }
        Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> ritz;
        VectorX<Scalar> sub = beta.head(std::max<Index>(m - 1, 0));
        ritz.computeFromTridiagonal(alpha.head(m), sub, Eigen::ComputeEigenvectors);
        estimate = ritz.eigenvalues()(m - 1);
        const VectorX<Scalar> y = ritz.eigenvectors().col(m - 1);
        residual = std::abs(beta(m - 1) * y(m - 1));
        if (m == n || residual <= tol * estimate) {
            op.lambda_max = estimate;
            return estimate;
        }
        start = (basis.leftCols(m) * y).normalized();
    }
    throw ConvergenceError(
        "spectral radius did not converge", static_cast<double>(estimate),
        static_cast<double>(residual));
}

template <typename Scalar>
NormalizedOperator<Scalar> normalize(const LBOperator<Scalar>& op, Scalar headroom)
{
    if (!op.lambda_max || !(*op.lambda_max > 0)) {
        throw ValidationError("normalization needs a positive lambda_max; call spectral_radius first");
    }
    if (!(headroom >= 1)) throw ValidationError("normalization headroom must be >= 1");
    const Scalar scale = *op.lambda_max * headroom;
    const Index n = op.num_vertices();
    SparseMatrix<Scalar> matrix =
        (Scalar(2) / scale * op.areas.cwiseInverse()).asDiagonal() * op.stiffness;
    SparseMatrix<Scalar> identity(n, n);
    identity.setIdentity();
    matrix -= identity;
    matrix.makeCompressed();
    return NormalizedOperator<Scalar>(std::move(matrix), scale, op.areas);
}

template <typename Scalar>
void export_operator(const LBOperator<Scalar>& op, const std::filesystem::path& prefix)
{
    using detail::format_number;
    const auto coo_path = std::filesystem::path(prefix.string() + ".coo.txt");
    const auto area_path = std::filesystem::path(prefix.string() + ".areas.csv");
    std::ofstream coo(coo_path);
    if (!coo) throw Error("cannot open '" + coo_path.string() + "' for writing");
    for (Index i = 0; i < op.stiffness.outerSize(); ++i) {
        for (typename SparseMatrix<Scalar>::InnerIterator it(op.stiffness, i); it; ++it) {
            coo << it.row() << ' ' << it.col() << ' ' << format_number(it.value()) << '\n';
        }
    }
    std::ofstream areas(area_path);
    if (!areas) throw Error("cannot open '" + area_path.string() + "' for writing");
    areas << "vertex,area\n";
    for (Index i = 0; i < op.areas.size(); ++i) {
        areas << i << ',' << format_number(op.areas(i)) << '\n';
    }
    if (!coo || !areas) throw Error("failed writing operator export '" + prefix.string() + "'");
}

#define LBAUG_INSTANTIATE(Scalar)                                                             \
    template LBOperator<Scalar> assemble(const TriMesh<Scalar>&);                             \
    template Scalar spectral_radius(LBOperator<Scalar>&, Scalar, int);                        \
    template NormalizedOperator<Scalar> normalize(const LBOperator<Scalar>&, Scalar);         \
    template void export_operator(const LBOperator<Scalar>&, const std::filesystem::path&);

LBAUG_INSTANTIATE(float)
LBAUG_INSTANTIATE(double)

#undef LBAUG_INSTANTIATE

} // namespace lbaug
