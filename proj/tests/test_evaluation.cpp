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

#include "lsself/evaluation.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "lsself/errors.h"
#include "lsself/robustness.h"
#include "test_util.h"

using namespace lsself;
using lsself::testing::fixture;
using lsself::testing::random_matrix;
using lsself::testing::random_observable;

namespace {

double cot(double x) {
    return 1.0 / std::tan(x);
}

CMatrix epr() {
    CMatrix s(2, 2);
    s(0, 0) = s(1, 1) = 1.0 / std::sqrt(2.0);
    return s;
}

// <phi| X |phi> with X applied as a product of factors right to left, so the
// large Bell operator is never formed.
cplx sandwich(const CMatrix &phi, const std::vector<const CMatrix *> &factors) {
    CMatrix v = phi;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) v = **it * v;
    return frobenius_inner(phi, v);
}

}  // namespace

TEST(evaluation, context) {
    for (double alpha : {1.0, cot(std::numbers::pi / 5), cot(std::numbers::pi / 7), -2.0, 7.5}) {
        auto ctx = WeightedChshContext::make(alpha);
        EXPECT_NEAR(ctx.c * ctx.c + ctx.s * ctx.s, 1.0, 1e-15);
        EXPECT_GE(ctx.imax, 2 * std::abs(alpha));
        EXPECT_NEAR(ctx.imax, 2 * std::sqrt(1 + alpha * alpha), 1e-14);
        EXPECT_NEAR(std::tan(ctx.mu), 1 / alpha, 1e-12);
    }
    EXPECT_NO_THROW(WeightedChshContext::make(cot(std::numbers::pi / 3)));
    EXPECT_THROW(WeightedChshContext::make(0.5), DomainError);
    EXPECT_THROW(WeightedChshContext::make(INFINITY), DomainError);
    EXPECT_THROW(WeightedChshContext::make(NAN), DomainError);
}

TEST(evaluation, ideal_qubit_strategy_reaches_the_maximum) {
    for (double alpha : {1.0, cot(std::numbers::pi / 5), cot(std::numbers::pi / 7)}) {
        auto ctx = WeightedChshContext::make(alpha);
        auto q = ideal_chsh_strategy(ctx);
        double v = weighted_chsh_value(q.state, q.M1, q.M2, q.N1, q.N2, ctx);
        EXPECT_NEAR(v, 2 * std::sqrt(1 + alpha * alpha), 1e-10);
        auto sos = sos_residuals(q.M1, q.M2, q.N1, q.N2, ctx);
        EXPECT_LE(sos.res1, 1e-9);
        EXPECT_LE(sos.res2, 1e-9);
        // The state is a zero eigenvector of the shifted operator.
        CMatrix vec(4, 1);
        for (int k = 0; k < 4; k++) vec(k, 0) = q.state(k / 2, k % 2);
        EXPECT_LE(frobenius_norm(shifted_bell_operator(q.M1, q.M2, q.N1, q.N2, ctx) * vec), 1e-12);
    }
}

TEST(evaluation, product_state_obeys_the_local_bound) {
    for (double alpha : {1.0, cot(std::numbers::pi / 5)}) {
        auto ctx = WeightedChshContext::make(alpha);
        auto q = ideal_chsh_strategy(ctx);
        CMatrix prod(2, 2);
        prod(0, 0) = 1.0;
        EXPECT_LE(weighted_chsh_value(prod, q.M1, q.M2, q.N1, q.N2, ctx), 2 * std::abs(alpha) + 1e-12);
    }
}

TEST(evaluation, all_z_on_epr_gives_two) {
    auto ctx = WeightedChshContext::make(1.0);
    CMatrix z = pauli_z();
    EXPECT_NEAR(weighted_chsh_value(epr(), z, z, z, z, ctx), 2.0, 1e-14);
    EXPECT_THROW(weighted_chsh_value(epr(), 2.0 * z, z, z, z, ctx), PreconditionError);
    EXPECT_THROW(sos_residuals(z, pauli_x() + z, z, z, ctx), PreconditionError);
}

// Both decompositions are operator identities, so they hold for arbitrary
// binary observables, not only the optimal ones.
TEST(evaluation, sos_identities_hold_for_random_observables) {
    std::mt19937_64 rng(2024);
    double worst1 = 0, worst2 = 0;
    int instance = 0;
    for (double alpha : {1.0, cot(std::numbers::pi / 5)}) {
        auto ctx = WeightedChshContext::make(alpha);
        for (std::size_t dim : {2, 4, 6}) {
            for (int t = 0; t < 17; t++, instance++) {
                CMatrix m1 = random_observable(rng, dim), m2 = random_observable(rng, dim);
                CMatrix n1 = random_observable(rng, dim), n2 = random_observable(rng, dim);
                auto sos = sos_residuals(m1, m2, n1, n2, ctx);
                worst1 = std::max(worst1, sos.res1);
                worst2 = std::max(worst2, sos.res2);
            }
        }
    }
    EXPECT_GE(instance, 100);
    EXPECT_LE(worst2, 1e-9);
    EXPECT_LE(worst1, 1e-9);
}

// Second path: evaluate both sides of the second decomposition on random
// vectors, one factor at a time.
TEST(evaluation, sos_two_on_random_vectors) {
    std::mt19937_64 rng(77);
    auto ctx = WeightedChshContext::make(cot(std::numbers::pi / 5));
    const std::size_t n = 3;
    CMatrix m1 = random_observable(rng, n), m2 = random_observable(rng, n);
    CMatrix n1 = random_observable(rng, n), n2 = random_observable(rng, n);
    const CMatrix ia = CMatrix::identity(n), ib = CMatrix::identity(n);
    const CMatrix za = kron(m1, ib), xa = kron(m2, ib);
    const CMatrix zb = kron(ia, (1 / (2 * ctx.c)) * (n1 + n2)), xb = kron(ia, (1 / (2 * ctx.s)) * (n1 - n2));
    const CMatrix b11 = kron(m1, n1), b12 = kron(m1, n2), b21 = kron(m2, n1), b22 = kron(m2, n2);
    const CMatrix dz = za - zb, dx = xa - xb;
    for (int t = 0; t < 10; t++) {
        CMatrix phi = random_matrix(rng, n * n, 1);
        cplx bell = ctx.alpha * sandwich(phi, {&b11}) + ctx.alpha * sandwich(phi, {&b12}) + sandwich(phi, {&b21}) -
                    sandwich(phi, {&b22});
        cplx lhs = ctx.imax * frobenius_inner(phi, phi) - bell;
        cplx rhs = (ctx.c * ctx.c / ctx.s) * sandwich(phi, {&dz, &dz}) + ctx.s * sandwich(phi, {&dx, &dx});
        EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::abs(lhs) + 1e-12);
    }
}

TEST(evaluation, ext_block_reaches_the_weighted_chsh_maximum) {
    for (int d : {3, 5, 7, 11, 13}) {
        const auto &f = fixture(d);
        double want = 2.0 / std::sin(std::numbers::pi / d);
        EXPECT_NEAR(ext_chsh_value(f.corr, f.test), want, 1e-10) << d;
        auto rep = evaluate(f.corr, f.test, f.corr);
        EXPECT_NEAR(rep.imax, want, 1e-10);
        EXPECT_NEAR(rep.winning_probability, 1.0, 1e-10);
        EXPECT_EQ(rep.epsilon, 0.0);
        EXPECT_LE(rep.sos.res2, 1e-9);
    }
}

TEST(evaluation, correlation_distance_toy) {
    Correlation a, b;
    a.entries = {{0, 0, 2, 2, {0.5, 0, 0, 0.5}}, {0, 1, 1, 2, {0.25, 0.75}}};
    b.entries = {{0, 0, 2, 2, {0.25, 0.25, 0, 0.5}}, {0, 1, 1, 2, {1.0, 0.0}}};
    // 0.5 * (0.25 + 0.25) + 0.5 * (0.75 + 0.75)
    EXPECT_NEAR(correlation_distance(a, b, std::vector<double>{0.5, 0.5}), 1.0, 1e-15);
    EXPECT_NEAR(correlation_distance(a, a, std::vector<double>{0.5, 0.5}), 0.0, 0);
    EXPECT_THROW(correlation_distance(a, b, std::vector<double>{1.0}), StructuralError);
    b.entries[1].y = 2;
    EXPECT_THROW(correlation_distance(a, b, std::vector<double>{0.5, 0.5}), StructuralError);
}

TEST(evaluation, correlation_distance_is_a_metric) {
    const auto &f = fixture(3);
    std::vector<Correlation> cs;
    for (uint64_t seed : {1, 2, 3}) {
        auto s = perturb_strategy(f.ideal, {PerturbationKind::Both, 0.05, seed});
        cs.push_back(generate_correlation(s, f.test));
    }
    for (const auto &x : cs) {
        EXPECT_EQ(correlation_distance(x, x, f.test), 0.0);
        for (const auto &y : cs) {
            EXPECT_NEAR(correlation_distance(x, y, f.test), correlation_distance(y, x, f.test), 1e-15);
            for (const auto &z : cs) {
                EXPECT_LE(correlation_distance(x, z, f.test),
                          correlation_distance(x, y, f.test) + correlation_distance(y, z, f.test) + 1e-15);
            }
        }
    }
}

// Moving weight onto a product state orthogonal to the ideal one can only
// lower the winning probability.
TEST(evaluation, winning_probability_under_contamination) {
    const auto &f = fixture(3);
    CMatrix other(f.ideal.dimA, f.ideal.dimB);
    other(0, 0) = 1.0;  // |0>|0> is orthogonal to the ideal state
    ASSERT_EQ(std::abs(frobenius_inner(other, f.ideal.state)), 0.0);
    double prev = 1.0 + 1e-12;
    const double m = f.test.ls.system.num_rows();
    for (double t : {0.0, 0.1, 0.3, 0.6, 1.0}) {
        Strategy s = f.ideal;
        s.state = std::sqrt(1 - t) * f.ideal.state + std::sqrt(t) * other;
        double p = ls_winning_probability(s, f.test);
        EXPECT_LE(p, prev + 1e-12) << t;
        prev = p;
        if (t == 1.0) EXPECT_LE(p, 1.0 - 1.0 / (4 * m));
    }
}
