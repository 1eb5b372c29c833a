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

#ifndef LSSELF_LSG_H
#define LSSELF_LSG_H

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "lsself/groups.h"

namespace lsself {

/// Hx = c over Z_2 with exactly three variables per row.
struct LinearSystem {
    int r = 0;
    std::vector<std::string> var_names;  // column order
    std::unordered_map<std::string, int> var_index;
    std::vector<std::array<int, 3>> rows;  // sorted column indices
    std::vector<uint8_t> rhs;

    int num_vars() const { return static_cast<int>(var_names.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }
    /// Position of var within row, or -1.
    int position(int row, int var) const;
    bool operator==(const LinearSystem &other) const;
};

/// The solution-group system: one row per three-variable linear relation of
/// Gamma, rhs 1 exactly on the J-linear row.
LinearSystem build_linear_system(int r);
LinearSystem linear_system_from(const Presentation &gamma);

/// Alice answers an equation with a bit triple packed as
/// a(pos 0) | a(pos 1) << 1 | a(pos 2) << 2.
inline int bit_of(int assignment, int pos) {
    return (assignment >> pos) & 1;
}

bool satisfies(const LinearSystem &sys, int row, int assignment);

/// A question pair (equation row, variable in that row).
struct LsPair {
    int row = 0;
    int var = 0;
    int pos = 0;  // position of var within the row
};

struct GameLS {
    LinearSystem system;
    std::vector<LsPair> valid_pairs;  // row-major, then by position
    /// Externally quoted support size, 157r + 685. Reported, not used.
    int quoted_pair_count = 0;

    int num_valid_pairs() const { return static_cast<int>(valid_pairs.size()); }
    double pi(int row, int var) const;
};

GameLS build_ls_game(int r);
int quoted_pair_count(int r);

/// 1 iff the assignment satisfies the row and agrees with b at var.
/// Throws DomainError if var is not in the row.
int score_ls(const GameLS &game, int row, int var, const std::array<int, 3> &a, int b);

/// "x(f0) + x(f1) + x(f2) = 0" per row, preceded by a "# vars:" header line
/// carrying the column order so that parsing is exact.
std::string emit_system_text(const LinearSystem &sys);
LinearSystem parse_system_text(const std::string &text);

}  // namespace lsself

#endif
