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

#ifndef LSSELF_STRATEGY_H
#define LSSELF_STRATEGY_H

#include <map>
#include <string>
#include <vector>

#include "lsself/linalg.h"
#include "lsself/lsg.h"
#include "lsself/numtheory.h"
#include "lsself/representation.h"

namespace lsself {

enum class QuestionKind { Equation, Variable, Ext, Comm };

/// Extended weighted-CHSH questions other than x(a1), x(a2): question 0 and
/// the two "n(r)+1", "n(r)+2" questions.
enum class ExtId { Zero, N1, N2 };

/// Answer conventions:
///   Equation: packed bit triple (see bit_of), 8 answers.
///   Variable: bit, 2 answers.
///   Ext Zero: index 0 is answer 0, index 1 is answer 2.
///   Ext N1/N2: answers 0, 1, 2.
///   Comm (Bob only): index 2*b1 + b2 for b1 in Z3 (the Ext part) and b2 in Z2.
struct Question {
    QuestionKind kind = QuestionKind::Variable;
    int row = -1;
    int var = -1;
    ExtId ext = ExtId::Zero;
    int arity = 2;
    std::string label;
};

enum class Block { LS, Ext, Comm };

struct QuestionPair {
    int x = 0;  // index into alice
    int y = 0;  // index into bob
    Block block = Block::LS;
};

/// The linear system game plus the extended weighted-CHSH and commutation
/// tests. The question distribution is uniform on `support`.
struct FullTest {
    PrimeParams params;
    GameLS ls;
    std::vector<Question> alice;
    std::vector<Question> bob;
    std::vector<QuestionPair> support;
    std::map<std::string, int> alice_index;
    std::map<std::string, int> bob_index;

    int n() const { return ls.system.num_vars(); }
    int num_pairs() const { return static_cast<int>(support.size()); }
    double pi() const { return 1.0 / num_pairs(); }
    int alice_at(const std::string &label) const;
    int bob_at(const std::string &label) const;
};

/// Variables whose commutation with the Ext measurements is tested.
const std::vector<std::string> &comm_variables();

std::string ext_label(ExtId e);

FullTest build_full_test(const PrimeParams &params);

/// Two-party strategy with a pure state stored as a coefficient matrix:
/// |psi> = sum_ij state(i, j) |i>_A |j>_B.
struct Strategy {
    int dimA = 0;
    int dimB = 0;
    CMatrix state;
    std::vector<ProjectorFamily> alice;  // aligned with FullTest::alice
    std::vector<ProjectorFamily> bob;    // aligned with FullTest::bob
};

/// Projector families on W_{d-1} used by the Ext questions.
struct ExtProjectors {
    ProjectorFamily zero;  // {Pi_V1, Pi_V1^perp}
    ProjectorFamily n1;    // {|1><1|, |d-1><d-1|, Pi_V1^perp}
    ProjectorFamily n2;    // rotated by 45 degrees inside V1
    ProjectorFamily q1;    // the x(a1) question
    ProjectorFamily q2;    // the x(a2) question
};

ExtProjectors ext_projectors(const PrimeParams &params);

/// 1/2 (|x1 x1> + |x2 x2>)^{(x)2} (x) (d-1)^{-1/2} sum_j |x_j>|x_{d-j}>.
CMatrix ideal_state(const PrimeParams &params);

Strategy build_ideal_strategy(const FullTest &test, const Rep &rep, double tol = kTolerance);

/// Max completeness/orthogonality residual over every family, plus the
/// state's deviation from unit norm.
double strategy_residual(const Strategy &s);

/// (A (x) B)|psi> as a coefficient matrix: A * state * B^T.
CMatrix apply_local(const CMatrix &state, const CMatrix &a, const CMatrix &b);
/// <psi| A (x) B |psi>
cplx expectation(const CMatrix &state, const CMatrix &a, const CMatrix &b);

struct CorrelationEntry {
    int x = 0;
    int y = 0;
    int na = 0;
    int nb = 0;
    std::vector<double> p;  // row-major in (a, b)
    double operator()(int a, int b) const { return p[a * nb + b]; }
};

/// p(a, b | x, y) on the test's support, entries aligned with support.
struct Correlation {
    int d = 0;
    int r = 0;
    std::vector<CorrelationEntry> entries;
};

enum class Exec { Serial, Parallel };

Correlation generate_correlation(const Strategy &s, const FullTest &test, Exec exec = Exec::Parallel);

/// Max over slices of |sum p - 1| and of the most negative entry.
double correlation_residual(const Correlation &c);

/// Alice's observable for x(s) in the first equation containing s.
CMatrix alice_marginal(const Strategy &s, const FullTest &test, const std::string &var);
/// P^0 - P^1 of Alice's single-variable question (a1, a2, f0, f2, g0, g2).
CMatrix alice_variable_observable(const Strategy &s, const FullTest &test, const std::string &var);
/// P^0 - P^1 of Bob's variable question.
CMatrix bob_observable(const Strategy &s, const FullTest &test, const std::string &var);

}  // namespace lsself

#endif
