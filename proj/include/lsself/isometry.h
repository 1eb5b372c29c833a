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

#ifndef LSSELF_ISOMETRY_H
#define LSSELF_ISOMETRY_H

#include <string>
#include <utility>
#include <vector>

#include "lsself/linalg.h"
#include "lsself/numtheory.h"
#include "lsself/strategy.h"

namespace lsself {

/// How the controlled-U stage picks its exponent from the control value c:
///   Standard:    Alice U^{log_r(d-c)}, Bob U^{log_r c}
///   Prime:       both U^{log_r c}
///   DoublePrime: both U^{log_r(d-c)}
/// Control 0 applies the identity.
enum class Variant { Standard, Prime, DoublePrime };
enum class Party { Alice, Bob };

std::string variant_name(Variant v);

int control_exponent(const PrimeParams &params, Variant v, Party party, int c);

/// Operators one party feeds into the isometry.
struct PartyOperators {
    CMatrix O;  // M(a1) M(a2)
    CMatrix U;  // M(a3) M(a4)
    CMatrix f0, f2, g0, g2;
};

/// Alice's operators use the first-equation marginals M(s); Bob's use N(s).
PartyOperators party_operators(const Strategy &s, const FullTest &test, Party party);

/// Phi_1 for one party as an isometry H -> H (x) C^d. Row index h*d + c.
/// The control starts in |x_0>, goes through QFT_d, controlled O^k, the
/// inverse QFT and the variant's controlled U.
CMatrix phi1_isometry(const CMatrix &O, const CMatrix &U, const PrimeParams &params, Variant v, Party party);

/// Phi_2 for one party as an isometry H -> H (x) C^2 (x) C^2. Row index
/// h*4 + 2*q1 + q2. Qubit q1 swaps with the (g2, f2) pair, q2 with (g0, f0):
/// H, controlled Z-type, H, controlled X-type.
CMatrix phi2_isometry(const CMatrix &f0, const CMatrix &f2, const CMatrix &g0, const CMatrix &g2);

/// Phi_2 after Phi_1 for one party. Row index (h*4 + anc)*d + c.
CMatrix party_isometry(const PartyOperators &ops, const PrimeParams &params, Variant v, Party party);

/// Coefficient matrix of a bipartite state whose row (column) index is the
/// mixed-radix number over a_dims (b_dims), first entry most significant.
struct BipartiteState {
    CMatrix coef;
    std::vector<int> a_dims;
    std::vector<int> b_dims;
};

/// Appends the control registers: a_dims = {nA, d}, b_dims = {nB, d}.
BipartiteState apply_phi1(const PartyOperators &alice, const PartyOperators &bob, const PrimeParams &params,
                          const CMatrix &state, Variant v);
/// Inserts two ancilla qubits after the first factor on each side.
BipartiteState apply_phi2(const PartyOperators &alice, const PartyOperators &bob, const BipartiteState &in);

inline const std::vector<std::string> &selftest_labels() {
    static const std::vector<std::string> labels = {"psi",    "OA_psi", "OB_psi", "UA_psi", "UB_psi",
                                                    "M1_psi", "M2_psi", "N1_psi", "N2_psi"};
    return labels;
}

Variant label_variant(const std::string &label);

/// Normalized target on the two control registers (rows A', columns B').
CMatrix control_target(const PrimeParams &params, const std::string &label);

struct JunkExtraction {
    CMatrix junk;           // nA x nB
    double distance = 0.0;  // ||out - junk (x) EPR^2 (x) target||
};

/// out has rows (hA, ancA, cA) and columns (hB, ancB, cB). The EPR pairs
/// join ancilla qubit k of Alice with qubit k of Bob.
JunkExtraction extract_junk(const CMatrix &out, int nA, int nB, int d, const CMatrix &target);

using NamedValues = std::vector<std::pair<std::string, double>>;

struct SelfTestReport {
    NamedValues distances;   // in selftest_labels() order
    NamedValues junk_norms;  // per label
    double junk_norm = 0.0;  // the psi label's junk
    double epsilon = 0.0;
};

/// Runs all nine labels. epsilon is the distance of the strategy's
/// correlation to `ideal`.
SelfTestReport selftest_report(const Strategy &s, const FullTest &test, const Correlation &ideal);

/// Applies all three variants to the strategy's own state and returns the
/// max entry difference between their reduced states on the four ancilla
/// qubits (controls and junk traced out).
double variant_consistency(const Strategy &s, const FullTest &test);

}  // namespace lsself

#endif
