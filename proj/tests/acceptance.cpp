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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include "oracles.h"

#include <lbaug/lbaug.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace lbaug;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome
{
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args)
{
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

SignalSet<double> simulated(const TriMesh<double>& mesh, Index n, Index m, std::uint64_t seed)
{
    SimulationConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.sigma = 0.6;
    cfg.patch = select_patch(mesh, 0, 2);
    cfg.signal_level = 1;
    cfg.seed = seed;
    return generate(mesh, cfg);
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

Outcome operator_correctness()
{
    const auto start = Clock::now();
    const auto op = assemble(make_tetrahedron<double>());
    const auto basis = eigendecompose(op, 4);
    const double third = 16.0 / 3.0;
    double eig_err = std::abs(basis.eigenvalues(0));
    for (Index j = 1; j < 4; ++j) eig_err = std::max(eig_err, std::abs(basis.eigenvalues(j) - third));

    // Row sums and self-adjointness on a jittered sphere as well as the tetrahedron.
    auto sphere = make_icosphere<double>(3);
    const auto noise = test::random_matrix(sphere.num_vertices(), 3, 17);
    sphere.vertices += 0.02 * noise;
    const auto sop = assemble(sphere);
    double row_err = 0;
    for (const LBOperator<double>* o : {&op, &sop}) {
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(o->num_vertices());
        row_err = std::max(row_err, (o->stiffness * ones).cwiseAbs().maxCoeff());
    }
    auto sop_r = sop;
    spectral_radius(sop_r);
    const auto norm = normalize(sop_r);
    double adj_err = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Eigen::MatrixXd uv = test::random_matrix(sphere.num_vertices(), 2, 100 + seed);
        const Eigen::VectorXd lu = norm * uv.col(0);
        const Eigen::VectorXd lv = norm * uv.col(1);
        const double left = uv.col(1).dot(sop.areas.asDiagonal() * lu);
        const double right = uv.col(0).dot(sop.areas.asDiagonal() * lv);
        adj_err = std::max(adj_err, std::abs(left - right) / std::max(1.0, std::abs(left)));
    }
    const double elapsed = seconds_since(start);
    return {eig_err <= 1e-9 && row_err <= 1e-10 && adj_err <= 1e-9 && elapsed < 1,
            fmt("eigenvalue err %.2e, row-sum err %.2e, self-adjoint err %.2e, %.2f s", eig_err, row_err, adj_err,
                elapsed)};
}

Outcome coefficient_correctness()
{
    const auto start = Clock::now();
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double lambda_max = 10.9;
    double worst = 0;
    double library_seconds = 0;
    for (int b = 0; b < 20; ++b) {
        double lo = unif(rng) * lambda_max, hi = unif(rng) * lambda_max;
        if (lo > hi) std::swap(lo, hi);
        const auto lib_start = Clock::now();
        const Eigen::VectorXd theta = band_coefficients(lo, hi, lambda_max, 5000);
        library_seconds += seconds_since(lib_start);
        const Eigen::VectorXd quad = test::quadrature_coefficients(lo, hi, lambda_max, 5000);
        worst = std::max(worst, (theta - quad).cwiseAbs().maxCoeff());
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-10 && elapsed < 10,
            fmt("max |closed form - quadrature| %.2e over 20 bands, %.2f s total (%.3f s closed form)", worst, elapsed,
                library_seconds)};
}

Outcome filter_sharpness()
{
    const auto start = Clock::now();
    const double lambda_max = 1.0;
    std::vector<double> widths;
    for (const Index order : {500, 2000, 5000}) {
        const Eigen::VectorXd theta = band_coefficients(0.05, 0.1, lambda_max, order);
        widths.push_back(transition_width<double>(theta, lambda_max, 1e-5 * lambda_max));
    }
    const double elapsed = seconds_since(start);
    const bool decreasing = widths[0] > widths[1] && widths[1] > widths[2];
    return {widths[2] <= 5e-4 && decreasing && elapsed < 30,
            fmt("widths K=500: %.3e, K=2000: %.3e, K=5000: %.3e, %.2f s", widths[0], widths[1], widths[2], elapsed)};
}

Outcome oracle_equivalence()
{
    const auto start = Clock::now();
    auto op = assemble(make_icosphere<double>(2));
    spectral_radius(op);
    const auto norm = normalize(op);
    const auto basis = eigendecompose(op, op.num_vertices());
    const auto bank = design_dyadic(norm.scale(), 5, 5000);

    SignalSet<double> real;
    real.data = test::random_matrix(12, op.num_vertices(), 8);
    real.labels.assign(12, 0);
    const auto plan = make_plan(12, bank.num_channels(), 99);
    const auto fused = c_pda(norm, bank, real, plan);

    // Exact spectral route: per-band gains applied to eigen-coefficients.
    const Eigen::VectorXd h0 = real.data * op.areas / op.areas.sum();
    const Eigen::MatrixXd centered = real.data.colwise() - h0;
    const Eigen::MatrixXd coeffs = forward(basis, centered);
    Eigen::MatrixXd exact = Eigen::MatrixXd::Zero(12, op.num_vertices());
    for (Index i = 0; i < 12; ++i) exact.row(plan.perms[0][i]).array() += h0(i);
    for (Index l = 0; l < bank.num_bands(); ++l) {
        Eigen::VectorXd gain(basis.size());
        for (Index j = 0; j < basis.size(); ++j) {
            gain(j) = test::trig_response(bank.theta.row(l).transpose(), 2 * basis.eigenvalues(j) / norm.scale() - 1);
        }
        const Eigen::MatrixXd h = inverse(basis, coeffs * gain.asDiagonal());
        for (Index i = 0; i < 12; ++i) exact.row(plan.perms[l + 1][i]) += h.row(i);
    }
    const double err = (fused.data - exact).cwiseAbs().maxCoeff();
    const double elapsed = seconds_since(start);
    return {err <= 1e-6 && elapsed < 120,
            fmt("max per-vertex diff %.2e (109 bands, K=5000, V=%lld), %.2f s", err,
                static_cast<long long>(op.num_vertices()), elapsed)};
}

Outcome mean_preservation()
{
    const auto start = Clock::now();
    const auto mesh = make_icosphere<double>(3);
    const auto real = simulated(mesh, 250, 250, 5);
    auto op = assemble(mesh);
    spectral_radius(op);
    const auto norm = normalize(op);
    const auto basis = eigendecompose(op, op.num_vertices());
    const auto bank = design_dyadic(norm.scale(), 5, 5000);

    double eig_dev = 0, cheb_dev = 0;
    for (const int label : class_labels(real)) {
        const auto cls = select_class(real, label);
        const auto plan_e = make_plan(cls.size(), basis.size(), derive_seed(31, label));
        const auto aug_e = lb_eig_da(basis, cls, plan_e);
        eig_dev = std::max(
            eig_dev, (aug_e.data.colwise().mean() - cls.data.colwise().mean()).cwiseAbs().maxCoeff());

        const auto plan_c = make_plan(cls.size(), bank.num_channels(), derive_seed(32, label));
        const auto aug_c = c_pda(norm, bank, cls, plan_c);
        const Eigen::MatrixXd recon = bank_reconstruction(norm, bank, cls.data);
        cheb_dev = std::max(
            cheb_dev, (aug_c.data.colwise().mean() - recon.colwise().mean()).cwiseAbs().maxCoeff());
    }
    const double elapsed = seconds_since(start);
    return {eig_dev <= 1e-8 && cheb_dev <= 1e-8 && elapsed < 300,
            fmt("LB-eigDA (J=V) %.2e, C-pDA (K=5000, 109 bands) %.2e, 500 signals, %.1f s", eig_dev, cheb_dev,
                elapsed)};
}

Outcome dyadic_count()
{
    const double lambda_max = 10.9;
    const auto bank = design_dyadic(lambda_max, 5, 10);
    bool tiling = bank.bands.front().lower == 0 && bank.bands.back().upper == lambda_max;
    for (std::size_t l = 1; l < bank.bands.size(); ++l) {
        tiling = tiling && bank.bands[l].lower == bank.bands[l - 1].upper && bank.bands[l].lower < bank.bands[l].upper;
    }
    return {bank.num_bands() == 109 && tiling,
            fmt("%lld bands, disjoint tiling of [0, lambda_max]: %s", static_cast<long long>(bank.num_bands()),
                tiling ? "yes" : "no")};
}

Outcome timing_shape()
{
    const auto mesh = make_uv_sphere<double>(50);
    auto op = assemble(mesh);
    spectral_radius(op);
    const auto norm = normalize(op);
    SignalSet<double> real;
    real.data = test::random_matrix(16, op.num_vertices(), 3);
    real.labels.assign(16, 0);
    const int trials = 3;

    std::vector<double> ks, kt;
    for (const Index order : {500, 1000, 2000, 4000}) {
        std::vector<double> times;
        for (int t = 0; t < trials; ++t) {
            const auto start = Clock::now();
            const auto bank = design_dyadic(norm.scale(), 5, order);
            c_pda(norm, bank, real, make_plan(16, bank.num_channels(), derive_seed(order, t)));
            times.push_back(seconds_since(start));
        }
        ks.push_back(double(order));
        kt.push_back(median(times));
    }
    // R^2 of the least-squares line t = a + b K.
    const Eigen::Map<const Eigen::VectorXd> x(ks.data(), 4), y(kt.data(), 4);
    const double xm = x.mean(), ym = y.mean();
    const double sxy = (x.array() - xm).matrix().dot((y.array() - ym).matrix());
    const double sxx = (x.array() - xm).square().sum();
    const double syy = (y.array() - ym).square().sum();
    const double r2 = sxy * sxy / (sxx * syy);

    // One run per J: these take minutes and differ by multiples, not by noise.
    std::vector<double> js, jt;
    for (const Index count : {500, 1000, 2000}) {
        std::vector<double> times;
        for (int t = 0; t < 1; ++t) {
            const auto start = Clock::now();
            const auto basis = eigendecompose(op, count);
            lb_eig_da(basis, real, make_plan(16, count, derive_seed(count, t)));
            times.push_back(seconds_since(start));
        }
        js.push_back(std::log(double(count)));
        jt.push_back(std::log(median(times)));
    }
    const Eigen::Map<const Eigen::VectorXd> lx(js.data(), 3), ly(jt.data(), 3);
    const double slope = (lx.array() - lx.mean()).matrix().dot((ly.array() - ly.mean()).matrix()) /
                         (lx.array() - lx.mean()).square().sum();

    return {r2 >= 0.95 && slope > 1,
            fmt("V=%lld; C-pDA medians %.2f/%.2f/%.2f/%.2f s, R^2 %.4f; LB-eigDA medians %.2f/%.2f/%.2f s, "
                "log-log slope %.2f; ratio J=2000/K=4000 %.1fx",
                static_cast<long long>(op.num_vertices()), kt[0], kt[1], kt[2], kt[3], r2, std::exp(jt[0]),
                std::exp(jt[1]), std::exp(jt[2]), slope, std::exp(jt[2]) / kt[3])};
}

Outcome patch_contrast()
{
    const auto start = Clock::now();
    const auto mesh = make_icosphere<double>(3);
    const auto real = simulated(mesh, 100, 100, 21);
    const auto patch = select_patch(mesh, 0, 2);
    std::vector<bool> in_patch(static_cast<std::size_t>(mesh.num_vertices()), false);
    for (const Index v : patch) in_patch[static_cast<std::size_t>(v)] = true;

    auto op = assemble(mesh);
    spectral_radius(op);
    const auto norm = normalize(op);
    const auto basis = eigendecompose(op, op.num_vertices());
    const auto bank = design_dyadic(norm.scale(), 5, 5000);

    auto contrast = [&](const SignalSet<double>& aug) {
        const auto group = select_class(aug, 1);
        const Eigen::RowVectorXd mean = group.data.colwise().mean();
        double inside = 0, outside = 0;
        Index n_in = 0, n_out = 0;
        for (Index v = 0; v < mean.size(); ++v) {
            if (in_patch[static_cast<std::size_t>(v)]) {
                inside += mean(v);
                ++n_in;
            } else {
                outside += mean(v);
                ++n_out;
            }
        }
        return std::pair{inside / double(n_in) - outside / double(n_out), group.size()};
    };
    const std::map<int, Index> counts = {{1, 500}};
    const auto [ce, ne] = contrast(augment_dataset<double>(real, LbEigMethod<double>{basis}, counts, 77));
    const auto [cc, nc] = contrast(augment_dataset<double>(real, ChebyshevMethod<double>{norm, bank}, counts, 78));
    const double elapsed = seconds_since(start);
    const auto ok = [](double c) { return c >= 0.9 && c <= 1.1; };
    return {ok(ce) && ok(cc) && ne == 500 && nc == 500 && elapsed < 300,
            fmt("contrast LB-eigDA %.4f, C-pDA %.4f (500 augmented Group-1 samples, patch %zu vertices), %.1f s", ce,
                cc, patch.size(), elapsed)};
}

} // namespace

int main()
{
    set_thread_count(0);
    struct Criterion
    {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "operator correctness", operator_correctness},
        {2, "Chebyshev coefficients vs quadrature", coefficient_correctness},
        {3, "filter sharpness", filter_sharpness},
        {4, "C-pDA vs exact spectral filters", oracle_equivalence},
        {5, "mean preservation", mean_preservation},
        {6, "dyadic bank count", dyadic_count},
        {7, "timing shape", timing_shape},
        {9, "patch contrast of augmented data", patch_contrast},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        if (c.id == 9) {
            std::cout << "[SKIP] 8 classifier accuracies: not reproducible here (no CNN training in this library)\n";
        }
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("threw: ") + e.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.name << ": " << outcome.detail
                  << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
