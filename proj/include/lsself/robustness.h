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

#ifndef LSSELF_ROBUSTNESS_H
#define LSSELF_ROBUSTNESS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsself/isometry.h"
#include "lsself/strategy.h"

namespace lsself {

enum class PerturbationKind { StateNoise, ObservableRotation, Both };

std::string kind_name(PerturbationKind k);  // "state", "rotation", "both"
PerturbationKind parse_kind(const std::string &name);

struct PerturbationSpec {
    PerturbationKind kind = PerturbationKind::Both;
    double delta = 0.0;  // in [0, 0.5]
    uint64_t seed = 0;
};

/// StateNoise: psi <- normalize(psi + delta g) with g a seeded unit-norm
/// complex Gaussian vector. ObservableRotation: every projector family is
/// conjugated by exp(i delta H), with one seeded unit-norm Hermitian H per
/// (party, question). delta = 0 returns an exact copy.
Strategy perturb_strategy(const Strategy &ideal, const PerturbationSpec &spec);

/// Relation residuals evaluated on the strategy's own state:
///   mn          max_s ||M(s)N(s)psi - psi||
///   equation    max_i ||prod_{s in I_i} M(s) psi - (-1)^{c_i} psi||
///   conj_A/B    ||O U^dagger psi - U^dagger O^r psi|| per party
///   psi1_norm   | ||psi_1||^2 - 1/(d-1) |
///   psi1_bob    ||N1 N2 psi_1 - omega psi_1||
///   psi1_alice  ||M1 M2 psi_1 - omega^{-1} psi_1||
///   comm        max over s in {f0,f2,g0,g2} of the commutator of M(s) with
///               Alice's n+1 projectors and n+2 observable, applied to psi
NamedValues relation_residuals(const Strategy &s, const FullTest &test);

struct SweepConfig {
    int d = 3;
    std::optional<int> r;
    std::vector<double> magnitudes = {1e-4, 1e-3, 1e-2};
    int trials = 8;
    std::vector<PerturbationKind> kinds = {PerturbationKind::Both};
    uint64_t seed = 1;
    /// Largest local dimension 4(d-1) a sweep may build.
    int max_local_dim = 64;
};

struct SweepRecord {
    int d = 0;
    int r = 0;
    PerturbationSpec spec;
    double epsilon = 0.0;
    SelfTestReport report;
    NamedValues residuals;

    double max_distance() const;
};

/// One record per (kind, magnitude, trial), in that nesting order. Trial t
/// uses seed + t, so every magnitude sees the same perturbation directions.
std::vector<SweepRecord> run_sweep(const SweepConfig &cfg);

std::string sweep_csv(const std::vector<SweepRecord> &records);

struct BoundPoint {
    double epsilon = 0.0;
    double distance = 0.0;
};

struct BoundFit {
    double C_fit = 0.0;         // smallest C with distance <= C eps^{1/8}
    double exponent_fit = 0.0;  // least-squares slope of log distance vs log eps
    int violations = 0;
    int points = 0;
};

/// Throws DomainError unless at least three distinct positive epsilons occur.
BoundFit fit_bound(const std::vector<BoundPoint> &points, double tau_fit = 1e-9);
/// Uses each record's largest self-test distance.
BoundFit fit_bound(const std::vector<SweepRecord> &records, double tau_fit = 1e-9);

}  // namespace lsself

#endif
