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

#include "lsself/groups.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "lsself/errors.h"

namespace lsself {

int o_index(int j) {
    return j <= 2 ? j : j + 5;
}

int u_index(int j) {
    return j + 2;
}

std::vector<Triple> build_conjugacy_triples(int r) {
    if (r < 2) {
        throw DomainError("build_conjugacy_triples: r must be >= 2");
    }
    auto o = o_index;
    auto u = u_index;
    std::vector<Triple> t = {
        {u(2), o(1), u(3)},
        {u(2), o(2), u(4)},
        {u(1), u(3), u(5)},
        {u(1), u(4), o(2)},
        {o(1), o(r), u(5)},
    };
    if (r % 2 == 0) {
        for (int j = 1; j <= r / 2 - 1; j++) {
            t.push_back({o(1), o(2 * j), o(2 * j + 1)});
            t.push_back({o(2), o(2 * j + 1), o(2 * j + 2)});
        }
    } else {
        t.push_back({o(2), o(1), o(3)});
        for (int j = 1; j <= (r - 3) / 2; j++) {
            t.push_back({o(1), o(2 * j + 1), o(2 * j + 2)});
            t.push_back({o(2), o(2 * j + 2), o(2 * j + 3)});
        }
    }
    return t;
}

std::string gen_name(GenKind kind, int i, int k) {
    auto s = std::to_string(i);
    switch (kind) {
        case GenKind::A: return "a" + s;
        case GenKind::B: return "b" + s;
        case GenKind::C: return "c" + s;
        case GenKind::D: return "d" + s;
        case GenKind::P: return "p" + s + "_" + std::to_string(k);
        case GenKind::F: return "f" + s;
        case GenKind::G: return "g" + s;
        case GenKind::M: return "m" + s;
        case GenKind::H: return "h" + s + "_" + std::to_string(k);
        case GenKind::Q: return "q" + s + "_" + std::to_string(k);
        case GenKind::J: return "J";
    }
    return "?";
}

int Presentation::num_variables() const {
    return static_cast<int>(generators.size()) - (has_j ? 1 : 0);
}

int Presentation::find(const std::string &name) const {
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
}

namespace {

class Builder {
   public:
    explicit Builder(Presentation &p) : p_(p) {}

    void gen(GenKind kind, int i = 0, int k = 0) {
        GenId g{kind, i, k, gen_name(kind, i, k)};
        p_.index[g.name] = static_cast<int>(p_.generators.size());
        p_.generators.push_back(std::move(g));
    }

    int id(GenKind kind, int i = 0, int k = 0) const {
        return p_.index.at(gen_name(kind, i, k));
    }

    // Three-variable relations are stored with generators sorted by index;
    // the group is a solution group so order does not matter, and sorting
    // makes duplicates detectable.
    void linear(std::vector<int> word, bool rhs_j = false) {
        std::sort(word.begin(), word.end());
        if (!seen_.insert(word).second) {
            return;
        }
        p_.relations.push_back({rhs_j ? RelationKind::JLinear : RelationKind::Linear, std::move(word), rhs_j});
    }

    void conj(int i, int j, int k) {
        p_.relations.push_back({RelationKind::Conjugacy, {i, j, i, k}, false});
    }

    void order_two_all() {
        for (int g = 0; g < static_cast<int>(p_.generators.size()); g++) {
            p_.relations.push_back({RelationKind::OrderTwo, {g, g}, false});
        }
    }

   private:
    Presentation &p_;
    std::set<std::vector<int>> seen_;
};

void build_p0(Presentation &p, Builder &b) {
    int na = p.r + 5;
    for (int i = 1; i <= na; i++) {
        b.gen(GenKind::A, i);
    }
    b.order_two_all();
    for (auto t : p.triples) {
        b.conj(b.id(GenKind::A, t.i), b.id(GenKind::A, t.j), b.id(GenKind::A, t.k));
    }
}

void build_p1(Presentation &p, Builder &b) {
    int na = p.r + 5;
    for (int i = 1; i <= na; i++) {
        b.gen(GenKind::A, i);
        b.gen(GenKind::B, i);
        b.gen(GenKind::C, i);
        b.gen(GenKind::D, i);
    }
    b.gen(GenKind::F, 0);
    for (auto t : p.triples) {
        b.gen(GenKind::H, t.j, t.k);
    }
    b.order_two_all();
    int f0 = b.id(GenKind::F, 0);
    for (int i = 1; i <= na; i++) {
        b.linear({b.id(GenKind::A, i), b.id(GenKind::B, i), b.id(GenKind::C, i)});
        b.linear({b.id(GenKind::A, i), f0, b.id(GenKind::D, i)});
        b.conj(f0, b.id(GenKind::B, i), b.id(GenKind::C, i));
    }
    for (auto t : p.triples) {
        b.linear({b.id(GenKind::H, t.j, t.k), b.id(GenKind::B, t.j), b.id(GenKind::C, t.k)});
        b.conj(b.id(GenKind::D, t.i), b.id(GenKind::B, t.j), b.id(GenKind::C, t.k));
    }
}

void build_gamma(Presentation &p, Builder &b) {
    int na = p.r + 5;
    for (int i = 1; i <= na; i++) {
        b.gen(GenKind::A, i);
        b.gen(GenKind::B, i);
        b.gen(GenKind::C, i);
        b.gen(GenKind::D, i);
        for (int k = 1; k <= 5; k++) {
            b.gen(GenKind::P, i, k);
        }
    }
    for (auto kind : {GenKind::F, GenKind::G, GenKind::M}) {
        for (int k = 0; k <= 2; k++) {
            b.gen(kind, k);
        }
    }
    for (auto t : p.triples) {
        b.gen(GenKind::H, t.j, t.k);
    }
    for (int c = 1; c <= static_cast<int>(p.triples.size()); c++) {
        for (int k = 1; k <= 6; k++) {
            b.gen(GenKind::Q, c, k);
        }
    }
    b.gen(GenKind::J);
    p.has_j = true;
    b.order_two_all();

    auto f = [&](int k) { return b.id(GenKind::F, k); };
    auto g = [&](int k) { return b.id(GenKind::G, k); };
    auto m = [&](int k) { return b.id(GenKind::M, k); };
    for (int i = 1; i <= na; i++) {
        int a = b.id(GenKind::A, i), bi = b.id(GenKind::B, i), c = b.id(GenKind::C, i), d = b.id(GenKind::D, i);
        auto pk = [&](int k) { return b.id(GenKind::P, i, k); };
        b.linear({a, bi, c});
        b.linear({a, f(0), d});
        b.linear({bi, f(2), pk(1)});
        b.linear({pk(1), pk(2), pk(3)});
        b.linear({f(0), pk(3), pk(4)});
        b.linear({c, pk(4), pk(5)});
        b.linear({f(1), pk(2), pk(5)});
    }
    for (int ci = 1; ci <= static_cast<int>(p.triples.size()); ci++) {
        auto t = p.triples[ci - 1];
        int h = b.id(GenKind::H, t.j, t.k);
        int bj = b.id(GenKind::B, t.j), ck = b.id(GenKind::C, t.k), di = b.id(GenKind::D, t.i);
        auto q = [&](int k) { return b.id(GenKind::Q, ci, k); };
        b.linear({h, bj, ck});
        b.linear({di, q(1), f(2)});
        b.linear({bj, f(2), q(2)});
        b.linear({q(2), q(3), q(4)});
        b.linear({di, q(4), q(5)});
        b.linear({ck, q(5), q(6)});
        b.linear({q(1), q(3), q(6)});
    }
    b.linear({f(0), f(1), f(2)});
    b.linear({g(0), g(1), g(2)});
    b.linear({m(0), m(1), m(2)});
    b.linear({f(0), g(2), m(0)});
    b.linear({f(2), g(0), m(1)});
    b.linear({f(1), g(1), m(2)}, true);

    int j = b.id(GenKind::J);
    for (int s = 0; s < j; s++) {
        p.relations.push_back({RelationKind::JCentral, {j, s, j, s}, false});
    }
}

}  // namespace

Presentation build_presentation(Level level, int r) {
    Presentation p;
    p.level = level;
    p.r = r;
    p.triples = build_conjugacy_triples(r);
    Builder b(p);
    switch (level) {
        case Level::P0: build_p0(p, b); break;
        case Level::P1: build_p1(p, b); break;
        case Level::Gamma: build_gamma(p, b); break;
    }
    return p;
}

Level parse_level(const std::string &name) {
    if (name == "P0") return Level::P0;
    if (name == "P1") return Level::P1;
    if (name == "Gamma") return Level::Gamma;
    throw DomainError("unknown presentation level '" + name + "'");
}

PresentationStats presentation_stats(const Presentation &p) {
    PresentationStats s;
    s.generators = p.num_variables();
    s.has_j = p.has_j;
    int j = p.has_j ? static_cast<int>(p.generators.size()) - 1 : -1;
    for (const auto &rel : p.relations) {
        switch (rel.kind) {
            case RelationKind::OrderTwo:
                if (rel.word[0] == j) {
                    s.j_relations++;
                } else {
                    s.order_two++;
                }
                break;
            case RelationKind::Linear:
            case RelationKind::JLinear: s.linear++; break;
            case RelationKind::Conjugacy: s.conjugacy++; break;
            case RelationKind::JCentral: s.j_relations++; break;
        }
    }
    return s;
}

std::string emit_presentation_text(const Presentation &p) {
    std::ostringstream out;
    auto nm = [&](int g) -> const std::string & { return p.generators[g].name; };
    for (const auto &rel : p.relations) {
        const auto &w = rel.word;
        switch (rel.kind) {
            case RelationKind::OrderTwo: out << "ord " << nm(w[0]) << "\n"; break;
            case RelationKind::Linear: out << "lin " << nm(w[0]) << " " << nm(w[1]) << " " << nm(w[2]) << " = e\n"; break;
            case RelationKind::JLinear: out << "linJ " << nm(w[0]) << " " << nm(w[1]) << " " << nm(w[2]) << " = J\n"; break;
            case RelationKind::Conjugacy:
                out << "conj " << nm(w[0]) << " " << nm(w[1]) << " " << nm(w[2]) << " = " << nm(w[3]) << "\n";
                break;
            case RelationKind::JCentral: out << "cent J " << nm(w[1]) << "\n"; break;
        }
    }
    return out.str();
}

}  // namespace lsself
