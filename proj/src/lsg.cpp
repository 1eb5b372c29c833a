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

#include "lsself/lsg.h"

#include <algorithm>
#include <regex>
#include <sstream>

#include "lsself/errors.h"

namespace lsself {

int LinearSystem::position(int row, int var) const {
    const auto &rw = rows[row];
    for (int k = 0; k < 3; k++) {
        if (rw[k] == var) {
            return k;
        }
    }
    return -1;
}

bool LinearSystem::operator==(const LinearSystem &other) const {
    return r == other.r && var_names == other.var_names && rows == other.rows && rhs == other.rhs;
}

LinearSystem linear_system_from(const Presentation &gamma) {
    if (gamma.level != Level::Gamma) {
        throw StructuralError("linear_system_from: presentation is not Gamma");
    }
    LinearSystem sys;
    sys.r = gamma.r;
    for (int g = 0; g < gamma.num_variables(); g++) {
        sys.var_index[gamma.generators[g].name] = g;
        sys.var_names.push_back(gamma.generators[g].name);
    }
    for (const auto &rel : gamma.relations) {
        if (rel.kind != RelationKind::Linear && rel.kind != RelationKind::JLinear) {
            continue;
        }
        sys.rows.push_back({rel.word[0], rel.word[1], rel.word[2]});
        sys.rhs.push_back(rel.rhs_j ? 1 : 0);
    }
    return sys;
}

LinearSystem build_linear_system(int r) {
    return linear_system_from(build_presentation(Level::Gamma, r));
}

bool satisfies(const LinearSystem &sys, int row, int assignment) {
    int parity = bit_of(assignment, 0) ^ bit_of(assignment, 1) ^ bit_of(assignment, 2);
    return parity == sys.rhs[row];
}

int quoted_pair_count(int r) {
    return 157 * r + 685;
}

double GameLS::pi(int row, int var) const {
    if (row < 0 || row >= system.num_rows() || system.position(row, var) < 0) {
        return 0.0;
    }
    return 1.0 / num_valid_pairs();
}

GameLS build_ls_game(int r) {
    GameLS g;
    g.system = build_linear_system(r);
    for (int i = 0; i < g.system.num_rows(); i++) {
        for (int k = 0; k < 3; k++) {
            g.valid_pairs.push_back({i, g.system.rows[i][k], k});
        }
    }
    g.quoted_pair_count = quoted_pair_count(r);
    return g;
}

int score_ls(const GameLS &game, int row, int var, const std::array<int, 3> &a, int b) {
    if (row < 0 || row >= game.system.num_rows()) {
        throw DomainError("score_ls: row out of range");
    }
    int pos = game.system.position(row, var);
    if (pos < 0) {
        throw DomainError("score_ls: variable is not in the equation");
    }
    int packed = (a[0] & 1) | ((a[1] & 1) << 1) | ((a[2] & 1) << 2);
    return satisfies(game.system, row, packed) && a[pos] == b ? 1 : 0;
}

std::string emit_system_text(const LinearSystem &sys) {
    std::ostringstream out;
    out << "# r: " << sys.r << "\n# vars:";
    for (const auto &v : sys.var_names) {
        out << " " << v;
    }
    out << "\n";
    for (int i = 0; i < sys.num_rows(); i++) {
        const auto &rw = sys.rows[i];
        out << "x(" << sys.var_names[rw[0]] << ") + x(" << sys.var_names[rw[1]] << ") + x(" << sys.var_names[rw[2]]
            << ") = " << static_cast<int>(sys.rhs[i]) << "\n";
    }
    return out.str();
}

LinearSystem parse_system_text(const std::string &text) {
    static const std::regex row_re(R"(^x\((\w+)\) \+ x\((\w+)\) \+ x\((\w+)\) = ([01])$)");
    LinearSystem sys;
    std::istringstream in(text);
    std::string line;
    bool have_vars = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line.rfind("# r:", 0) == 0) {
            sys.r = std::stoi(line.substr(4));
            continue;
        }
        if (line.rfind("# vars:", 0) == 0) {
            std::istringstream names(line.substr(7));
            std::string v;
            while (names >> v) {
                sys.var_index[v] = static_cast<int>(sys.var_names.size());
                sys.var_names.push_back(v);
            }
            have_vars = true;
            continue;
        }
        std::smatch m;
        if (!std::regex_match(line, m, row_re)) {
            throw StructuralError("parse_system_text: bad line '" + line + "'");
        }
        if (!have_vars) {
            throw StructuralError("parse_system_text: missing '# vars:' header");
        }
        std::array<int, 3> rw{};
        for (int k = 0; k < 3; k++) {
            auto it = sys.var_index.find(m[k + 1].str());
            if (it == sys.var_index.end()) {
                throw StructuralError("parse_system_text: unknown variable " + m[k + 1].str());
            }
            rw[k] = it->second;
        }
        sys.rows.push_back(rw);
        sys.rhs.push_back(static_cast<uint8_t>(m[4].str()[0] - '0'));
    }
    return sys;
}

}  // namespace lsself
