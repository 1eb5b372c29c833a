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

#include "lsself/serialize.h"

#include "lsself/errors.h"

namespace lsself {

json system_to_json(const LinearSystem &sys) {
    json rows = json::array();
    for (int i = 0; i < sys.num_rows(); i++) {
        json vars = json::array();
        for (int v : sys.rows[i]) {
            vars.push_back(sys.var_names[v]);
        }
        rows.push_back({{"vars", vars}, {"rhs", static_cast<int>(sys.rhs[i])}});
    }
    return {{"r", sys.r}, {"vars", sys.var_names}, {"rows", rows}};
}

LinearSystem system_from_json(const json &j) {
    try {
        LinearSystem sys;
        sys.r = j.at("r").get<int>();
        sys.var_names = j.at("vars").get<std::vector<std::string>>();
        for (int v = 0; v < sys.num_vars(); v++) {
            if (!sys.var_index.emplace(sys.var_names[v], v).second) {
                throw StructuralError("system JSON: duplicate variable " + sys.var_names[v]);
            }
        }
        for (const auto &row : j.at("rows")) {
            const auto names = row.at("vars").get<std::vector<std::string>>();
            if (names.size() != 3) {
                throw StructuralError("system JSON: every row needs exactly three variables");
            }
            std::array<int, 3> cols{};
            for (int k = 0; k < 3; k++) {
                auto it = sys.var_index.find(names[k]);
                if (it == sys.var_index.end()) {
                    throw StructuralError("system JSON: unknown variable " + names[k]);
                }
                cols[k] = it->second;
            }
            const int rhs = row.at("rhs").get<int>();
            if (rhs != 0 && rhs != 1) {
                throw StructuralError("system JSON: rhs must be 0 or 1");
            }
            sys.rows.push_back(cols);
            sys.rhs.push_back(static_cast<uint8_t>(rhs));
        }
        return sys;
    } catch (const json::exception &e) {
        throw StructuralError(std::string("system JSON: ") + e.what());
    }
}

json game_to_json(const GameLS &game) {
    const auto &sys = game.system;
    json pairs = json::array();
    for (const auto &p : game.valid_pairs) {
        pairs.push_back({{"row", p.row}, {"var", sys.var_names[p.var]}});
    }
    return {{"system", system_to_json(sys)},
            {"equations", sys.num_rows()},
            {"variables", sys.num_vars()},
            {"pairs", pairs},
            {"num_pairs", game.num_valid_pairs()},
            {"quoted_pair_count", game.quoted_pair_count}};
}

json correlation_to_json(const Correlation &c, const FullTest &test) {
    json entries = json::array();
    for (const auto &e : c.entries) {
        json p = json::array();
        for (int a = 0; a < e.na; a++) {
            json row = json::array();
            for (int b = 0; b < e.nb; b++) {
                row.push_back(e(a, b));
            }
            p.push_back(row);
        }
        entries.push_back({{"x", test.alice.at(e.x).label}, {"y", test.bob.at(e.y).label}, {"p", p}});
    }
    return {{"d", c.d}, {"r", c.r}, {"entries", entries}};
}

Correlation correlation_from_json(const json &j, const FullTest &test) {
    try {
        Correlation c;
        c.d = j.at("d").get<int>();
        c.r = j.at("r").get<int>();
        if (c.d != test.params.d || c.r != test.params.r) {
            throw StructuralError("correlation JSON: (d, r) does not match the test");
        }
        const auto &entries = j.at("entries");
        if (entries.size() != test.support.size()) {
            throw StructuralError("correlation JSON: support size differs from the test");
        }
        for (std::size_t k = 0; k < entries.size(); k++) {
            const auto &ej = entries[k];
            const auto &pr = test.support[k];
            CorrelationEntry e;
            e.x = test.alice_at(ej.at("x").get<std::string>());
            e.y = test.bob_at(ej.at("y").get<std::string>());
            if (e.x != pr.x || e.y != pr.y) {
                throw StructuralError("correlation JSON: entry " + std::to_string(k) + " is out of order");
            }
            e.na = test.alice[e.x].arity;
            e.nb = test.bob[e.y].arity;
            const auto &p = ej.at("p");
            if (static_cast<int>(p.size()) != e.na) {
                throw StructuralError("correlation JSON: wrong number of Alice outcomes");
            }
            for (const auto &row : p) {
                if (static_cast<int>(row.size()) != e.nb) {
                    throw StructuralError("correlation JSON: wrong number of Bob outcomes");
                }
                for (const auto &v : row) {
                    e.p.push_back(v.get<double>());
                }
            }
            c.entries.push_back(std::move(e));
        }
        return c;
    } catch (const json::exception &e) {
        throw StructuralError(std::string("correlation JSON: ") + e.what());
    } catch (const std::out_of_range &) {
        throw StructuralError("correlation JSON: unknown question label");
    }
}

namespace {

json named(const NamedValues &vals) {
    json j = json::object();
    for (const auto &[k, v] : vals) {
        j[k] = v;
    }
    return j;
}

}  // namespace

json report_to_json(const SelfTestReport &report) {
    return {{"distances", named(report.distances)},
            {"junk_norms", named(report.junk_norms)},
            {"junk_norm", report.junk_norm},
            {"epsilon", report.epsilon}};
}

json eval_to_json(const EvalReport &r) {
    return {{"winning_probability", r.winning_probability},
            {"chsh", {{"alpha", r.alpha}, {"value", r.chsh_value}, {"imax", r.imax}}},
            {"sos", {{"res1", r.sos.res1}, {"res2", r.sos.res2}}},
            {"epsilon", r.epsilon}};
}

json matrix_to_json(const CMatrix &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); i++) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); k++) {
            row.push_back({m(i, k).real(), m(i, k).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

CMatrix matrix_from_json(const json &j) {
    try {
        const std::size_t rows = j.size();
        const std::size_t cols = rows ? j[0].size() : 0;
        CMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; i++) {
            if (j[i].size() != cols) {
                throw StructuralError("matrix JSON: ragged rows");
            }
            for (std::size_t k = 0; k < cols; k++) {
                m(i, k) = cplx(j[i][k].at(0).get<double>(), j[i][k].at(1).get<double>());
            }
        }
        return m;
    } catch (const json::exception &e) {
        throw StructuralError(std::string("matrix JSON: ") + e.what());
    }
}

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

}  // namespace lsself
