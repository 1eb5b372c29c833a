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

#include "lsself/isometry.h"

#include <cmath>

#include "gtest/gtest.h"

#include "lsself/errors.h"
#include "lsself/robustness.h"
#include "test_util.h"

using namespace lsself;
using lsself::testing::fixture;

namespace {

double isometry_residual(const CMatrix &v) {
    return max_abs(v.adjoint() * v - CMatrix::identity(v.cols()));
}

const Variant kVariants[] = {Variant::Standard, Variant::Prime, Variant::DoublePrime};

}  // namespace

TEST(isometry, control_exponents_d5) {
    auto p = make_prime_params(5);  // r = 2: logs 1->0, 2->1, 4->2, 3->3
    const int log[] = {-1, 0, 1, 3, 2};
    for (int c = 1; c < 5; c++) {
        EXPECT_EQ(control_exponent(p, Variant::Standard, Party::Alice, c), log[5 - c]);
        EXPECT_EQ(control_exponent(p, Variant::Standard, Party::Bob, c), log[c]);
        EXPECT_EQ(control_exponent(p, Variant::Prime, Party::Alice, c), log[c]);
        EXPECT_EQ(control_exponent(p, Variant::Prime, Party::Bob, c), log[c]);
        EXPECT_EQ(control_exponent(p, Variant::DoublePrime, Party::Alice, c), log[5 - c]);
        EXPECT_EQ(control_exponent(p, Variant::DoublePrime, Party::Bob, c), log[5 - c]);
    }
    for (auto v : kVariants) EXPECT_EQ(control_exponent(p, v, Party::Alice, 0), 0);
    EXPECT_THROW(control_exponent(p, Variant::Standard, Party::Alice, 5), DomainError);
}

TEST(isometry, labels) {
    EXPECT_EQ(selftest_labels().size(), 9u);
    EXPECT_EQ(label_variant("psi"), Variant::Standard);
    EXPECT_EQ(label_variant("UB_psi"), Variant::Standard);
    EXPECT_EQ(label_variant("M2_psi"), Variant::Prime);
    EXPECT_EQ(label_variant("N1_psi"), Variant::DoublePrime);
    EXPECT_THROW(label_variant("X_psi"), DomainError);
    EXPECT_THROW(control_target(make_prime_params(3), "X_psi"), DomainError);
    for (const auto &l : selftest_labels()) {
        EXPECT_NEAR(frobenius_norm(control_target(make_prime_params(7), l)), 1.0, 1e-14) << l;
    }
}

TEST(isometry, stages_are_isometries) {
    for (int d : {3, 5}) {
        const auto &f = fixture(d);
        for (auto party : {Party::Alice, Party::Bob}) {
            auto ops = party_operators(f.ideal, f.test, party);
            EXPECT_LE(isometry_residual(phi2_isometry(ops.f0, ops.f2, ops.g0, ops.g2)), 1e-12);
            for (auto v : kVariants) {
                EXPECT_LE(isometry_residual(phi1_isometry(ops.O, ops.U, f.params, v, party)), 1e-12);
                EXPECT_LE(isometry_residual(party_isometry(ops, f.params, v, party)), 1e-12);
            }
        }
    }
}

// Perturbed strategies still consist of binary observables, so every stage
// keeps unit vectors at unit length.
TEST(isometry, norm_preserved_for_perturbed_strategies) {
    const auto &f = fixture(3);
    auto s = perturb_strategy(f.ideal, {PerturbationKind::Both, 0.1, 11});
    auto a = party_operators(s, f.test, Party::Alice);
    auto b = party_operators(s, f.test, Party::Bob);
    for (auto v : kVariants) {
        auto one = apply_phi1(a, b, f.params, s.state, v);
        EXPECT_NEAR(frobenius_norm(one.coef), 1.0, 1e-10);
        auto two = apply_phi2(a, b, one);
        EXPECT_NEAR(frobenius_norm(two.coef), 1.0, 1e-10);
    }
}

TEST(isometry, trivial_operators_act_trivially) {
    const int d = 5, n = 3;
    auto p = make_prime_params(d);
    std::mt19937_64 rng(1);
    CMatrix psi = lsself::testing::random_matrix(rng, n, n);
    psi *= 1.0 / frobenius_norm(psi);
    const CMatrix id = CMatrix::identity(n);
    PartyOperators ops{id, id, id, id, id, id};
    auto one = apply_phi1(ops, ops, p, psi, Variant::Standard);
    EXPECT_EQ(one.a_dims, (std::vector<int>{n, d}));
    for (int ha = 0; ha < n; ha++) {
        for (int hb = 0; hb < n; hb++) {
            for (int ca = 0; ca < d; ca++) {
                for (int cb = 0; cb < d; cb++) {
                    cplx want = (ca == 0 && cb == 0) ? psi(ha, hb) : cplx(0);
                    ASSERT_LT(std::abs(one.coef(ha * d + ca, hb * d + cb) - want), 1e-14);
                }
            }
        }
    }
    // With Z = I only the |00> ancilla branch survives.
    auto two = apply_phi2(ops, ops, {psi, {n}, {n}});
    EXPECT_EQ(two.a_dims, (std::vector<int>{n, 2, 2}));
    for (int ha = 0; ha < n; ha++) {
        for (int hb = 0; hb < n; hb++) {
            for (int qa = 0; qa < 4; qa++) {
                for (int qb = 0; qb < 4; qb++) {
                    cplx want = (qa == 0 && qb == 0) ? psi(ha, hb) : cplx(0);
                    ASSERT_LT(std::abs(two.coef(ha * 4 + qa, hb * 4 + qb) - want), 1e-14);
                }
            }
        }
    }
}

// After the first stage the ideal state is sqrt(d-1) psi_1 (x) the control
// target, where psi_1 is built from Alice's n+1 and n+2 measurements.
TEST(isometry, first_stage_extracts_psi1) {
    for (int d : {3, 5, 7}) {
        const auto &f = fixture(d);
        auto a = party_operators(f.ideal, f.test, Party::Alice);
        auto b = party_operators(f.ideal, f.test, Party::Bob);
        auto one = apply_phi1(a, b, f.params, f.ideal.state, Variant::Standard);
        CMatrix t = control_target(f.params, "psi");
        const int n = f.ideal.dimA;
        CMatrix junk(n, n);
        for (int ha = 0; ha < n; ha++)
            for (int hb = 0; hb < n; hb++)
                for (int ca = 0; ca < d; ca++)
                    for (int cb = 0; cb < d; cb++)
                        junk(ha, hb) += std::conj(t(ca, cb)) * one.coef(ha * d + ca, hb * d + cb);
        double dist2 = 0;
        for (int ha = 0; ha < n; ha++)
            for (int hb = 0; hb < n; hb++)
                for (int ca = 0; ca < d; ca++)
                    for (int cb = 0; cb < d; cb++)
                        dist2 += std::norm(one.coef(ha * d + ca, hb * d + cb) - junk(ha, hb) * t(ca, cb));
        EXPECT_LE(std::sqrt(dist2), 1e-8) << d;

        const auto &p1 = f.ideal.alice[f.test.alice_at("ext:n+1")];
        const auto &p2 = f.ideal.alice[f.test.alice_at("ext:n+2")];
        const CMatrix mn2 = p2[0] - p2[1];
        const cplx i(0, 1);
        CMatrix k = 0.5 * (p1[0] + i * (mn2 * p1[1]) - i * (mn2 * p1[0]) + p1[1]);
        CMatrix psi1 = k * f.ideal.state;
        EXPECT_LE(max_abs(junk - std::sqrt(d - 1.0) * psi1), 1e-10) << d;
    }
}

TEST(isometry, staged_and_combined_paths_agree) {
    const auto &f = fixture(5);
    auto a = party_operators(f.ideal, f.test, Party::Alice);
    auto b = party_operators(f.ideal, f.test, Party::Bob);
    for (auto v : kVariants) {
        auto staged = apply_phi2(a, b, apply_phi1(a, b, f.params, f.ideal.state, v));
        CMatrix va = party_isometry(a, f.params, v, Party::Alice);
        CMatrix vb = party_isometry(b, f.params, v, Party::Bob);
        EXPECT_LE(max_abs(staged.coef - va * f.ideal.state * vb.transpose()), 1e-13);
        EXPECT_EQ(staged.a_dims, (std::vector<int>{f.ideal.dimA, 2, 2, 5}));
    }
}

TEST(isometry, ideal_self_test) {
    for (int d : {3, 5}) {
        const auto &f = fixture(d);
        auto rep = selftest_report(f.ideal, f.test, f.corr);
        ASSERT_EQ(rep.distances.size(), 9u);
        for (std::size_t k = 0; k < 9; k++) {
            EXPECT_EQ(rep.distances[k].first, selftest_labels()[k]);
            EXPECT_LE(rep.distances[k].second, 1e-8) << d << " " << rep.distances[k].first;
            EXPECT_NEAR(rep.junk_norms[k].second, 1.0, 1e-8);
        }
        EXPECT_NEAR(rep.junk_norm, 1.0, 1e-8);
        EXPECT_LE(rep.epsilon, 1e-12);
    }
}

// Wrong phase conventions in the target are caught.
TEST(isometry, wrong_target_is_far) {
    const auto &f = fixture(5);
    auto a = party_operators(f.ideal, f.test, Party::Alice);
    auto b = party_operators(f.ideal, f.test, Party::Bob);
    CMatrix va = party_isometry(a, f.params, Variant::Standard, Party::Alice);
    CMatrix vb = party_isometry(b, f.params, Variant::Standard, Party::Bob);
    CMatrix out = va * f.ideal.state * vb.transpose();
    const int n = f.ideal.dimA;
    EXPECT_LE(extract_junk(out, n, n, 5, control_target(f.params, "psi")).distance, 1e-8);
    EXPECT_GT(extract_junk(out, n, n, 5, control_target(f.params, "OA_psi")).distance, 0.1);
    EXPECT_THROW(extract_junk(out, n, n, 3, control_target(f.params, "psi")), StructuralError);
}

TEST(isometry, variant_consistency) {
    for (int d : {3, 5}) {
        EXPECT_LE(variant_consistency(fixture(d).ideal, fixture(d).test), 1e-8);
    }
}

TEST(isometry, perturbed_report_is_well_formed) {
    const auto &f = fixture(3);
    auto s = perturb_strategy(f.ideal, {PerturbationKind::StateNoise, 1e-4, 5});
    auto rep = selftest_report(s, f.test, f.corr);
    EXPECT_GT(rep.epsilon, 0.0);
    for (const auto &[l, v] : rep.distances) {
        EXPECT_TRUE(std::isfinite(v)) << l;
        EXPECT_GE(v, 0.0);
    }
    EXPECT_LE(rep.junk_norm, 1.0 + 1e-9);
}
