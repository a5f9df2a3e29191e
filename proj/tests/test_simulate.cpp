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
#include <lbaug/simulate.h>

#include "oracles.h"

#include <doctest.h>

using namespace lbaug;

TEST_SUITE("simulate")
{
    TEST_CASE("k-ring patches")
    {
        const auto tet = make_tetrahedron<double>();
        CHECK(select_patch(tet, 2, 0) == std::vector<Index>{2});
        CHECK(select_patch(tet, 2, 1) == std::vector<Index>{0, 1, 2, 3});

        const auto ico = make_icosphere<double>(2);
        const auto ring = select_patch(ico, 0, 2);
        CHECK(ring == test::ring_by_matrix_powers(ico, 0, 2));
        CHECK(ring.size() == 16); // vertex 0 has valence 5: 1 + 5 + 10
        for (Index center : {Index(17), Index(100), Index(161)}) {
            for (int hops : {1, 3, 4}) CHECK(select_patch(ico, center, hops) == test::ring_by_matrix_powers(ico, center, hops));
        }
        CHECK_THROWS_AS(select_patch(ico, 162, 1), ValidationError);
        CHECK_THROWS_AS(select_patch(ico, 0, -1), ValidationError);
    }

    TEST_CASE("group means match the design")
    {
        const auto mesh = make_icosphere<double>(3);
        SimulationConfig cfg;
        cfg.n = 2000;
        cfg.m = 1000;
        cfg.sigma = 0.6;
        cfg.patch = select_patch(mesh, 10, 2);
        cfg.seed = 123;
        const auto signals = generate(mesh, cfg);
        REQUIRE(signals.size() == 3000);
        CHECK(signals.num_vertices() == 642);
        CHECK(std::count(signals.labels.begin(), signals.labels.begin() + 2000, 0) == 2000);
        CHECK(std::count(signals.labels.begin() + 2000, signals.labels.end(), 1) == 1000);
        CHECK(signals.provenance.method == "simulated");

        const auto patch_mean = [&](Index begin, Index count) {
            double sum = 0;
            for (Index i = begin; i < begin + count; ++i) {
                for (Index v : cfg.patch) sum += signals.data(i, v);
            }
            return sum / double(count * Index(cfg.patch.size()));
        };
        const double p = double(cfg.patch.size());
        CHECK(std::abs(patch_mean(0, 2000)) <= 4 * cfg.sigma / std::sqrt(2000 * p));
        CHECK(std::abs(patch_mean(2000, 1000) - 1) <= 4 * cfg.sigma / std::sqrt(1000 * p));

        const Eigen::ArrayXd all = Eigen::Map<const Eigen::ArrayXd>(signals.data.data(), 2000);
        const double sd = std::sqrt((all - all.mean()).square().sum() / 1999);
        CHECK(sd == doctest::Approx(0.6).epsilon(0.08));
    }

    TEST_CASE("null signal gives statistically identical groups")
    {
        // Two-sample z statistics of the patch mean over independent seeds should look standard normal.
        const auto mesh = make_icosphere<double>(2);
        SimulationConfig cfg;
        cfg.n = 60;
        cfg.m = 40;
        cfg.sigma = 1.3;
        cfg.patch = select_patch(mesh, 4, 1);
        cfg.signal_level = 0;
        int rejections = 0;
        const int trials = 200;
        for (int t = 0; t < trials; ++t) {
            cfg.seed = 1000 + t;
            const auto s = generate(mesh, cfg);
            Eigen::VectorXd score(s.size());
            for (Index i = 0; i < s.size(); ++i) {
                double sum = 0;
                for (Index v : cfg.patch) sum += s.data(i, v);
                score(i) = sum / double(cfg.patch.size());
            }
            const Eigen::VectorXd a = score.head(cfg.n), b = score.tail(cfg.m);
            const double va = (a.array() - a.mean()).square().sum() / double(cfg.n - 1);
            const double vb = (b.array() - b.mean()).square().sum() / double(cfg.m - 1);
            const double z = (a.mean() - b.mean()) / std::sqrt(va / double(cfg.n) + vb / double(cfg.m));
            if (std::abs(z) > 1.96) ++rejections;
        }
        // About 5% of trials reject at the 5% level; 99.9% binomial range for 200 trials.
        CHECK(rejections <= 22);
    }

    TEST_CASE("generation is reproducible and thread independent")
    {
        const auto mesh = make_icosphere<double>(2);
        SimulationConfig cfg;
        cfg.n = 30;
        cfg.m = 20;
        cfg.sigma = 0.6;
        cfg.patch = {1, 2, 3};
        cfg.seed = 8;
        set_thread_count(1);
        const auto a = generate(mesh, cfg);
        set_thread_count(4);
        const auto b = generate(mesh, cfg);
        set_thread_count(0);
        CHECK(a.data == b.data);
        CHECK(a.labels == b.labels);
        cfg.seed = 9;
        CHECK(generate(mesh, cfg).data != a.data);
    }

    TEST_CASE("configuration errors")
    {
        const auto mesh = make_icosphere<double>(1);
        SimulationConfig cfg;
        cfg.n = 3;
        cfg.m = 3;
        cfg.sigma = 0.5;
        cfg.patch = {0};
        CHECK_NOTHROW(generate(mesh, cfg));
        cfg.patch = {42};
        CHECK_THROWS_AS(generate(mesh, cfg), ValidationError);
        cfg.patch = {};
        CHECK_THROWS_AS(generate(mesh, cfg), ValidationError);
        cfg.patch = {0};
        cfg.sigma = 0;
        CHECK_THROWS_AS(generate(mesh, cfg), ValidationError);
        cfg.sigma = 1;
        cfg.m = 0;
        CHECK_THROWS_AS(generate(mesh, cfg), ValidationError);
    }

    TEST_CASE("statistics")
    {
        SignalSet<double> real;
        real.data = test::random_matrix(12, 30, 5);
        real.labels.assign(12, 0);
        SUBCASE("copy reproduces the real correlations")
        {
            const auto stats = compute_stats(real, real);
            REQUIRE(stats.augmented_correlation.size() == 12);
            for (std::size_t i = 0; i < 12; ++i) {
                REQUIRE(stats.real_correlation[i].has_value());
                CHECK(*stats.augmented_correlation[i] == *stats.real_correlation[i]);
            }
            CHECK(stats.max_mean_deviation == 0.0);
            for (std::size_t k = 1; k < stats.order.size(); ++k) {
                CHECK(stats.real_mean(stats.order[k - 1]) >= stats.real_mean(stats.order[k]));
            }
        }
        SUBCASE("constant signals have no correlation")
        {
            SignalSet<double> flat = real;
            flat.data.row(3).setConstant(2.0);
            const auto stats = compute_stats(real, flat);
            CHECK_FALSE(stats.augmented_correlation[3].has_value());
            CHECK(stats.augmented_correlation[2].has_value());
        }
        SUBCASE("correlation matches a direct formula")
        {
            const Eigen::RowVectorXd x = real.data.row(0), y = real.data.row(1);
            const double mx = x.mean(), my = y.mean();
            double sxy = 0, sxx = 0, syy = 0;
            for (Index v = 0; v < x.size(); ++v) {
                sxy += (x(v) - mx) * (y(v) - my);
                sxx += (x(v) - mx) * (x(v) - mx);
                syy += (y(v) - my) * (y(v) - my);
            }
            CHECK(*pearson<double>(x, y) == doctest::Approx(sxy / std::sqrt(sxx * syy)).epsilon(1e-13));
        }
        SUBCASE("dimension mismatch")
        {
            SignalSet<double> other;
            other.data = Eigen::MatrixXd::Zero(2, 31);
            other.labels = {0, 0};
            CHECK_THROWS_AS(compute_stats(real, other), DimensionError);
        }
    }
}
