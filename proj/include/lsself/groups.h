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

#ifndef LSSELF_GROUPS_H
#define LSSELF_GROUPS_H

#include <string>
#include <unordered_map>
#include <vector>

namespace lsself {

/// A conjugacy triple (i, j, k) over a_1..a_{r+5}, meaning a_i a_j a_i = a_k.
struct Triple {
    int i = 0;
    int j = 0;
    int k = 0;
    bool operator==(const Triple &) const = default;
};

/// The r+3 conjugacy triples. Generators are relabeled a_1 = o_1, a_2 = o_2,
/// a_3..a_7 = u_1..u_5 and a_8.. = o_3.. . The five u-relations come first,
/// then the parity-dependent o-relations.
std::vector<Triple> build_conjugacy_triples(int r);

/// Index of o_j and u_j in the a_* numbering.
int o_index(int j);
int u_index(int j);

enum class GenKind { A, B, C, D, P, F, G, M, H, Q, J };

struct GenId {
    GenKind kind = GenKind::A;
    /// a/b/c/d/p: i in 1..r+5. f/g/m: 0..2. h: j. q: triple number (1-based).
    int i = 0;
    /// p: 1..5. h: k. q: 1..6. Unused otherwise.
    int k = 0;
    std::string name;
};

/// Canonical names: a3, p3_2, f0, h4_5 (h_{jk}), q2_6 (q_{c,6} for the
/// second triple), J.
std::string gen_name(GenKind kind, int i = 0, int k = 0);

enum class RelationKind { OrderTwo, Linear, Conjugacy, JLinear, JCentral };

/// word multiplies to the identity, or to J when rhs_j is set.
/// Conjugacy words are (s_i, s_j, s_i, s_k); J-central words are (J, s, J, s).
struct Relation {
    RelationKind kind = RelationKind::Linear;
    std::vector<int> word;
    bool rhs_j = false;
};

enum class Level { P0, P1, Gamma };

struct Presentation {
    Level level = Level::Gamma;
    int r = 0;
    /// Includes J as the last entry when has_j is set.
    std::vector<GenId> generators;
    std::vector<Relation> relations;
    std::vector<Triple> triples;
    bool has_j = false;
    std::unordered_map<std::string, int> index;

    /// Generators excluding J.
    int num_variables() const;
    int find(const std::string &name) const;  // -1 if absent
};

Presentation build_presentation(Level level, int r);
Level parse_level(const std::string &name);

struct PresentationStats {
    int generators = 0;  // excluding J
    bool has_j = false;
    int order_two = 0;
    int linear = 0;  // three-variable relations, J-linear included
    int conjugacy = 0;
    int j_relations = 0;
};

PresentationStats presentation_stats(const Presentation &p);

/// One relation per line: "lin f0 f1 f2 = e", "linJ f1 g1 m2 = J",
/// "conj a3 a1 a3 = a5", "ord a1", "cent J a1".
std::string emit_presentation_text(const Presentation &p);

}  // namespace lsself

#endif
