// Copyright 2026 The lsself Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lsself/robustness.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gtest/gtest.h"

#include "lsself/errors.h"
#include "lsself/evaluation.h"
#include "test_util.h"

using namespace lsself;
using lsself::testing::fixture;

static bool same_strategy(const Strategy &a, const Strategy &b) {
    return a.state == b.state && a.alice == b.alice && a.bob == b.bob;
}

TEST(robustness, kinds) {
    for (auto k : {PerturbationKind::StateNoise, PerturbationKind::ObservableRotation, PerturbationKind::Both}) {
        EXPECT_EQ(parse_kind(kind_name(k)), k);
    }
    EXPECT_THROW(parse_kind("sideways"), DomainError);
}

TEST(robustness, zero_magnitude_is_exact) {
    const auto &f = fixture(3);
    for (auto k : {PerturbationKind::StateNoise, PerturbationKind::ObservableRotation, PerturbationKind::Both}) {
        auto s = perturb_strategy(f.ideal, {k, 0.0, 99});
        EXPECT_TRUE(same_strategy(s, f.ideal));
        EXPECT_EQ(correlation_distance(generate_correlation(s, f.test), f.corr, f.test), 0.0);
    }
}

TEST(robustness, magnitude_range) {
    const auto &f = fixture(3);
    EXPECT_THROW(perturb_strategy(f.ideal, {PerturbationKind::Both, -1e-3, 1}), DomainError);
    EXPECT_THROW(perturb_strategy(f.ideal, {PerturbationKind::Both, 0.51, 1}), DomainError);
    EXPECT_THROW(perturb_strategy(f.ideal, {PerturbationKind::Both, NAN, 1}), DomainError);
    EXPECT_NO_THROW(perturb_strategy(f.ideal, {PerturbationKind::Both, 0.5, 1}));
}

TEST(robustness, seeded_determinism) {
    const auto &f = fixture(3);
    auto a = perturb_strategy(f.ideal, {PerturbationKind::Both, 1e-2, 42});
    auto b = perturb_strategy(f.ideal, {PerturbationKind::Both, 1e-2, 42});
    auto c = perturb_strategy(f.ideal, {PerturbationKind::Both, 1e-2, 43});
    EXPECT_TRUE(same_strategy(a, b));
    EXPECT_FALSE(same_strategy(a, c));
}

TEST(robustness, state_noise_envelope) {
    const auto &f = fixture(5);
    const double delta = 1e-3;
    for (uint64_t seed = 1; seed <= 4; seed++) {
        auto s = perturb_strategy(f.ideal, {PerturbationKind::StateNoise, delta, seed});
        EXPECT_NEAR(frobenius_norm(s.state), 1.0, 1e-14);
        EXPECT_EQ(s.alice, f.ideal.alice);
        double eps = correlation_distance(generate_correlation(s, f.test), f.corr, f.test);
        EXPECT_GT(eps, 0.0);
        EXPECT_LE(eps, 4 * delta + 10 * delta * delta);
    }
}

TEST(robustness, rotations_keep_families_projective) {
    const auto &f = fixture(5);
    auto s = perturb_strategy(f.ideal, {PerturbationKind::ObservableRotation, 0.3, 8});
    EXPECT_EQ(s.state, f.ideal.state);
    EXPECT_LE(strategy_residual(s), 1e-10);
    EXPECT_FALSE(s.alice == f.ideal.alice);
    EXPECT_FALSE(s.bob == f.ideal.bob);
}

TEST(robustness, residuals_vanish_for_the_ideal_strategy) {
    for (int d : {3, 5, 7}) {
        const auto &f = fixture(d);
        auto res = relation_residuals(f.ideal, f.test);
        ASSERT_EQ(res.size(), 8u);
        for (const auto &[label, v] : res) {
            EXPECT_LE(v, 1e-9) << d << " " << label;
        }
    }
}

TEST(robustness, residuals_detect_rotation) {
    const auto &f = fixture(3);
    auto s = perturb_strategy(f.ideal, {PerturbationKind::ObservableRotation, 1e-2, 3});
    for (const auto &[label, v] : relation_residuals(s, f.test)) {
        EXPECT_TRUE(std::isfinite(v)) << label;
        EXPECT_GT(v, 0.0) << label;
    }
}

TEST(robustness, sweep_at_zero_is_ideal) {
    SweepConfig cfg;
    cfg.d = 3;
    cfg.magnitudes = {0.0};
    cfg.trials = 2;
    cfg.kinds = {PerturbationKind::StateNoise, PerturbationKind::Both};
    auto recs = run_sweep(cfg);
    ASSERT_EQ(recs.size(), 4u);
    for (const auto &r : recs) {
        EXPECT_EQ(r.epsilon, 0.0);
        EXPECT_LE(r.max_distance(), 1e-8);
    }
    EXPECT_EQ(recs[0].spec.kind, PerturbationKind::StateNoise);
    EXPECT_EQ(recs[1].spec.seed, cfg.seed + 1);
}

TEST(robustness, sweep_grows_with_magnitude) {
    SweepConfig cfg;
    cfg.d = 3;
    cfg.magnitudes = {1e-4, 1e-3, 1e-2};
    cfg.trials = 3;
    auto recs = run_sweep(cfg);
    ASSERT_EQ(recs.size(), 9u);
    std::vector<double> med;
    for (int m = 0; m < 3; m++) {
        std::vector<double> eps;
        for (int t = 0; t < 3; t++) eps.push_back(recs[m * 3 + t].epsilon);
        std::sort(eps.begin(), eps.end());
        med.push_back(eps[1]);
    }
    EXPECT_LT(med[0], med[1]);
    EXPECT_LT(med[1], med[2]);
    auto fit = fit_bound(recs);
    EXPECT_EQ(fit.violations, 0);
    EXPECT_EQ(fit.points, 9);
    for (const auto &r : recs) EXPECT_LE(r.max_distance(), fit.C_fit * std::pow(r.epsilon, 0.125) * (1 + 1e-12));
}

TEST(robustness, sweep_guards) {
    SweepConfig cfg;
    cfg.d = 13;
    cfg.max_local_dim = 24;
    EXPECT_THROW(run_sweep(cfg), ResourceError);
    cfg.d = 3;
    cfg.trials = 0;
    EXPECT_THROW(run_sweep(cfg), DomainError);
    cfg.trials = 1;
    cfg.magnitudes = {0.7};
    EXPECT_THROW(run_sweep(cfg), DomainError);
    cfg.d = 4;
    EXPECT_THROW(run_sweep(cfg), DomainError);
}

TEST(robustness, csv_layout) {
    SweepConfig cfg;
    cfg.magnitudes = {1e-3};
    cfg.trials = 2;
    auto csv = sweep_csv(run_sweep(cfg));
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header,
              "d,r,kind,delta,seed,epsilon,dist_psi,dist_OA,dist_OB,dist_UA,dist_UB,dist_M1,dist_M2,dist_N1,"
              "dist_N2,junk_norm,res_mn,res_equation,res_conj_A,res_conj_B,res_psi1_norm,res_psi1_bob,"
              "res_psi1_alice,res_comm");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        rows++;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), std::count(header.begin(), header.end(), ','));
        EXPECT_EQ(line.rfind("3,2,both,0.001,", 0), 0u);
    }
    EXPECT_EQ(rows, 2);
}

TEST(robustness, fit_on_synthetic_data) {
    std::vector<BoundPoint> pts;
    for (double eps : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) pts.push_back({eps, 2 * std::pow(eps, 0.125)});
    auto fit = fit_bound(pts);
    EXPECT_NEAR(fit.exponent_fit, 0.125, 1e-6);
    EXPECT_NEAR(fit.C_fit, 2.0, 1e-12);
    EXPECT_EQ(fit.violations, 0);

    std::vector<BoundPoint> linear;
    for (double eps : {1e-4, 1e-3, 1e-2}) linear.push_back({eps, 3 * eps});
    EXPECT_NEAR(fit_bound(linear).exponent_fit, 1.0, 1e-9);

    EXPECT_THROW(fit_bound(std::vector<BoundPoint>{{0, 0}, {0, 0}, {0, 0}}), DomainError);
    EXPECT_THROW(fit_bound(std::vector<BoundPoint>{{1e-3, 1}, {1e-3, 2}, {1e-2, 1}}), DomainError);
}
