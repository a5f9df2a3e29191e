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

// Reference computations used only by the tests. Each one follows a different route from the
// library code it checks.

#include <lbaug/lb_operator.h>
#include <lbaug/mesh.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace lbaug::test {

inline std::filesystem::path temp_dir()
{
    std::filesystem::path dir(LBAUG_TEST_TMPDIR);
    std::filesystem::create_directories(dir);
    return dir;
}

inline Eigen::MatrixXd random_matrix(Index rows, Index cols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    Eigen::MatrixXd m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
    }
    return m;
}

/// Dense generalized eigenpairs of C psi = lambda A psi through Eigen's generalized solver.
struct DenseSpectrum
{
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors; // A-orthonormal columns
};

inline DenseSpectrum dense_spectrum(const LBOperator<double>& op)
{
    const Eigen::MatrixXd c = Eigen::MatrixXd(op.stiffness);
    const Eigen::MatrixXd a = op.areas.asDiagonal();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(c, a);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Truncated Chebyshev response sum_k theta_k T_k(x) using T_k(x) = cos(k acos x).
inline double trig_response(const Eigen::VectorXd& theta, double x)
{
    const double phi = std::acos(std::clamp(x, -1.0, 1.0));
    double sum = 0;
    for (Index k = 0; k < theta.size(); ++k) sum += theta(k) * std::cos(double(k) * phi);
    return sum;
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = x;
        weights[i] = 2 / ((1 - x * x) * dp * dp);
    }
}

///
/// Chebyshev coefficients of the indicator of [lower, upper] by adaptive quadrature of
///   theta_k = (2 - delta_k0) / pi * int_a^b T_k(x) / sqrt(1 - x^2) dx
/// directly in x. Panels are refined until a 16-point and a 24-point Gauss-Legendre rule agree
/// to `tol` for every k at once.
///
inline Eigen::VectorXd quadrature_coefficients(
    double lower, double upper, double lambda_max, Index order, double tol = 1e-14)
{
    const double a = 2 * lower / lambda_max - 1;
    const double b = 2 * upper / lambda_max - 1;
    std::vector<double> n16, w16, n24, w24;
    gauss_legendre(16, n16, w16);
    gauss_legendre(24, n24, w24);

    Eigen::VectorXd total = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd r16(order), r24(order);
    // Evaluates T_k at all nodes of a rule at once, k by k.
    auto rule = [&](double lo, double hi, const std::vector<double>& n, const std::vector<double>& w,
                    Eigen::VectorXd& out) {
        const Index q = static_cast<Index>(n.size());
        const double half = (hi - lo) / 2;
        const double mid = (hi + lo) / 2;
        Eigen::ArrayXd x(q), weight(q);
        for (Index i = 0; i < q; ++i) {
            x(i) = mid + half * n[static_cast<std::size_t>(i)];
            weight(i) = w[static_cast<std::size_t>(i)] * half / std::sqrt(1 - x(i) * x(i));
        }
        Eigen::ArrayXd t_prev = Eigen::ArrayXd::Ones(q), t = x, t_next(q);
        out(0) = weight.sum();
        if (order > 1) out(1) = (weight * x).sum();
        const Eigen::ArrayXd two_x = 2 * x;
        for (Index k = 2; k < order; ++k) {
            t_next = two_x * t - t_prev;
            t_prev.swap(t);
            t.swap(t_next);
            out(k) = (weight * t).sum();
        }
    };

    // Start from panels of equal angle so each holds about one oscillation of T_{order-1}.
    const double phi_a = std::acos(a), phi_b = std::acos(b);
    const Index panels = std::max<Index>(1, Index(std::ceil((phi_a - phi_b) * double(order) / std::numbers::pi)));
    std::vector<std::pair<double, double>> stack;
    for (Index p = 0; p < panels; ++p) {
        const double lo = std::cos(phi_a - (phi_a - phi_b) * double(p) / double(panels));
        const double hi = std::cos(phi_a - (phi_a - phi_b) * double(p + 1) / double(panels));
        stack.emplace_back(lo, hi);
    }
    while (!stack.empty()) {
        const auto [lo, hi] = stack.back();
        stack.pop_back();
        rule(lo, hi, n16, w16, r16);
        rule(lo, hi, n24, w24, r24);
        if ((r16 - r24).cwiseAbs().maxCoeff() <= tol || hi - lo < 1e-12) {
            total += r24;
        } else {
            const double mid = (lo + hi) / 2;
            stack.emplace_back(lo, mid);
            stack.emplace_back(mid, hi);
        }
    }
    total /= std::numbers::pi;
    total.tail(order - 1) *= 2;
    return total;
}

/// Vertices within `hops` of `center` via powers of the dense adjacency pattern.
template <typename Scalar>
std::vector<Index> ring_by_matrix_powers(const TriMesh<Scalar>& mesh, Index center, int hops)
{
    const Index nv = mesh.num_vertices();
    Eigen::MatrixXi adj = Eigen::MatrixXi::Identity(nv, nv);
    for (Index t = 0; t < mesh.num_triangles(); ++t) {
        for (int c = 0; c < 3; ++c) {
            const Index i = mesh.triangles(t, c), j = mesh.triangles(t, (c + 1) % 3);
            adj(i, j) = adj(j, i) = 1;
        }
    }
    Eigen::VectorXi reach = Eigen::VectorXi::Zero(nv);
    reach(center) = 1;
    for (int h = 0; h < hops; ++h) reach = (adj * reach).cwiseMin(1);
    std::vector<Index> out;
    for (Index v = 0; v < nv; ++v) {
        if (reach(v)) out.push_back(v);
    }
    return out;
}

} // namespace lbaug::test
