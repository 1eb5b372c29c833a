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

#ifndef LSSELF_EVALUATION_H
#define LSSELF_EVALUATION_H

#include <vector>

#include "lsself/linalg.h"
#include "lsself/strategy.h"

namespace lsself {

/// Weighted CHSH with weight alpha = cot(mu).
struct WeightedChshContext {
    double alpha = 1.0;
    double mu = 0.0;
    double c = 0.0;
    double s = 0.0;
    double imax = 0.0;  // 2 sqrt(1 + alpha^2)

    /// Throws DomainError unless |alpha| >= cot(pi/3).
    static WeightedChshContext make(double alpha);
};

/// sigma_z, sigma_x for Alice, c sigma_z +- s sigma_x for Bob, on an EPR pair.
struct QubitChshStrategy {
    CMatrix state;
    CMatrix M1, M2, N1, N2;
};

QubitChshStrategy ideal_chsh_strategy(const WeightedChshContext &ctx);

/// alpha<M1 N1> + alpha<M1 N2> + <M2 N1> - <M2 N2>.
double weighted_chsh_value(const CMatrix &state, const CMatrix &M1, const CMatrix &M2, const CMatrix &N1,
                           const CMatrix &N2, const WeightedChshContext &ctx, double tol = kTolerance);

/// The shifted Bell operator Imax * I - I_alpha on H_A (x) H_B.
CMatrix shifted_bell_operator(const CMatrix &M1, const CMatrix &M2, const CMatrix &N1, const CMatrix &N2,
                              const WeightedChshContext &ctx);

struct SosResiduals {
    double res1 = 0.0;  // squared-Bell-operator decomposition
    double res2 = 0.0;  // (Z_A - Z_B), (X_A - X_B) decomposition
};

SosResiduals sos_residuals(const CMatrix &M1, const CMatrix &M2, const CMatrix &N1, const CMatrix &N2,
                           const WeightedChshContext &ctx, double tol = kTolerance);

/// Expected LS score of the correlation's LS block under the uniform
/// distribution on valid (equation, variable) pairs.
double ls_winning_probability(const Correlation &c, const FullTest &test);
double ls_winning_probability(const Strategy &s, const FullTest &test);

/// sum_k weight_k sum_ab |p1 - p2|. Throws StructuralError if supports differ.
double correlation_distance(const Correlation &c1, const Correlation &c2, const std::vector<double> &weights);
/// Uniform weights over the test's support.
double correlation_distance(const Correlation &c1, const Correlation &c2, const FullTest &test);

/// Weighted CHSH value read off the EXT block of a correlation, with
/// alpha = cot(pi/d). Alice plays ext:n+1 and ext:n+2, Bob plays x(a2) and
/// x(a1); only outcomes {0,1} enter and the sum is rescaled by (d-1)/2, the
/// inverse weight of that subspace in the ideal state.
double ext_chsh_value(const Correlation &c, const FullTest &test);

struct EvalReport {
    double winning_probability = 0.0;
    double alpha = 0.0;
    double chsh_value = 0.0;
    double imax = 0.0;
    SosResiduals sos;  // on the qubit strategy at the same alpha
    double epsilon = 0.0;
};

EvalReport evaluate(const Correlation &c, const FullTest &test, const Correlation &ideal);

}  // namespace lsself

#endif
