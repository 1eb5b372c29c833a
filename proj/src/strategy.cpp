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

#include "lsself/strategy.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lsself/errors.h"
#include "parallel.h"

namespace lsself {

int FullTest::alice_at(const std::string &label) const {
    auto it = alice_index.find(label);
    if (it == alice_index.end()) {
        throw StructuralError("no Alice question '" + label + "'");
    }
    return it->second;
}

int FullTest::bob_at(const std::string &label) const {
    auto it = bob_index.find(label);
    if (it == bob_index.end()) {
        throw StructuralError("no Bob question '" + label + "'");
    }
    return it->second;
}

const std::vector<std::string> &comm_variables() {
    static const std::vector<std::string> vars = {"f0", "f2", "g0", "g2"};
    return vars;
}

std::string ext_label(ExtId e) {
    switch (e) {
        case ExtId::Zero: return "ext:0";
        case ExtId::N1: return "ext:n+1";
        case ExtId::N2: return "ext:n+2";
    }
    return "?";
}

namespace {

int ext_arity(ExtId e) {
    return e == ExtId::Zero ? 2 : 3;
}

void add(std::vector<Question> &qs, std::map<std::string, int> &index, Question q) {
    index[q.label] = static_cast<int>(qs.size());
    qs.push_back(std::move(q));
}

}  // namespace

FullTest build_full_test(const PrimeParams &params) {
    FullTest t;
    t.params = params;
    t.ls = build_ls_game(params.r);
    const auto &sys = t.ls.system;
    const ExtId exts[] = {ExtId::Zero, ExtId::N1, ExtId::N2};

    for (int i = 0; i < sys.num_rows(); i++) {
        add(t.alice, t.alice_index, {QuestionKind::Equation, i, -1, ExtId::Zero, 8, "eq:" + std::to_string(i)});
    }
    for (auto e : exts) {
        add(t.alice, t.alice_index, {QuestionKind::Ext, -1, -1, e, ext_arity(e), ext_label(e)});
    }
    std::vector<std::string> alice_vars = {"a1", "a2"};
    alice_vars.insert(alice_vars.end(), comm_variables().begin(), comm_variables().end());
    for (const auto &v : alice_vars) {
        add(t.alice, t.alice_index, {QuestionKind::Variable, -1, sys.var_index.at(v), ExtId::Zero, 2, "var:" + v});
    }

    for (int v = 0; v < sys.num_vars(); v++) {
        add(t.bob, t.bob_index, {QuestionKind::Variable, -1, v, ExtId::Zero, 2, "var:" + sys.var_names[v]});
    }
    for (auto e : exts) {
        add(t.bob, t.bob_index, {QuestionKind::Ext, -1, -1, e, ext_arity(e), ext_label(e)});
    }
    for (auto e : {ExtId::N1, ExtId::N2}) {
        for (const auto &v : comm_variables()) {
            std::string label = "comm:" + ext_label(e).substr(4) + "," + v;
            add(t.bob, t.bob_index, {QuestionKind::Comm, -1, sys.var_index.at(v), e, 6, label});
        }
    }

    for (const auto &pr : t.ls.valid_pairs) {
        t.support.push_back({pr.row, t.bob_at("var:" + sys.var_names[pr.var]), Block::LS});
    }
    const std::vector<std::string> ext_block = {"ext:0", "var:a1", "var:a2", "ext:n+1", "ext:n+2"};
    for (const auto &x : ext_block) {
        for (const auto &y : ext_block) {
            t.support.push_back({t.alice_at(x), t.bob_at(y), Block::Ext});
        }
    }
    for (auto e : {ExtId::N1, ExtId::N2}) {
        for (const auto &v : comm_variables()) {
            int y = t.bob_at("comm:" + ext_label(e).substr(4) + "," + v);
            t.support.push_back({t.alice_at(ext_label(e)), y, Block::Comm});
            t.support.push_back({t.alice_at("var:" + v), y, Block::Comm});
        }
    }
    return t;
}

ExtProjectors ext_projectors(const PrimeParams &params) {
    const int d = params.d;
    const int n = d - 1;
    const double rt = 1.0 / std::sqrt(2.0);
    auto x = [&](int j) {
        CMatrix v(n, 1);
        v(j - 1, 0) = 1.0;
        return v;
    };
    auto proj = [](const CMatrix &v) { return matmul(v, v.adjoint()); };

    ExtProjectors e;
    CMatrix q1p(n, n), q1m(n, n), q2p(n, n), q2m(n, n);
    CMatrix one, dm1;  // |1>, |d-1>
    for (int j = 1; j <= (d - 1) / 2; j++) {
        const cplx ph = std::polar(1.0, -j * std::numbers::pi / d);
        CMatrix kj = cplx(-rt) * (x(j) + ph * x(d - j));
        CMatrix kdj = cplx(0, rt) * (x(j) - ph * x(d - j));
        const double t = -j * std::numbers::pi / (2.0 * d);
        const double c = std::cos(t), s = std::sin(t);
        q1p += proj(c * kj + s * kdj);
        q1m += proj(s * kj - c * kdj);
        q2p += proj(c * kj - s * kdj);
        q2m += proj(s * kj + c * kdj);
        if (j == 1) {
            one = kj;
            dm1 = kdj;
        }
    }
    const CMatrix v1 = proj(one) + proj(dm1);
    const CMatrix perp = CMatrix::identity(n) - v1;
    e.zero = {v1, perp};
    e.n1 = {proj(one), proj(dm1), perp};
    e.n2 = {proj(cplx(rt) * (one + dm1)), proj(cplx(rt) * (one - dm1)), perp};
    e.q1 = {q1p, q1m};
    e.q2 = {q2p, q2m};
    return e;
}

CMatrix ideal_state(const PrimeParams &params) {
    const int n = params.d - 1;
    CMatrix epr(2, 2);
    epr(0, 0) = epr(1, 1) = 1.0 / std::sqrt(2.0);
    CMatrix w(n, n);
    for (int j = 1; j <= n; j++) {
        w(j - 1, params.d - j - 1) = 1.0 / std::sqrt(static_cast<double>(n));
    }
    return kron({epr, epr, w});
}

namespace {

ProjectorFamily lift4(const ProjectorFamily &f) {
    ProjectorFamily out;
    const CMatrix i4 = CMatrix::identity(4);
    for (const auto &p : f) {
        out.push_back(kron(i4, p));
    }
    return out;
}

const ProjectorFamily &ext_family(const ExtProjectors &e, ExtId id) {
    switch (id) {
        case ExtId::Zero: return e.zero;
        case ExtId::N1: return e.n1;
        case ExtId::N2: return e.n2;
    }
    return e.zero;
}

}  // namespace

Strategy build_ideal_strategy(const FullTest &test, const Rep &rep, double tol) {
    if (rep.params.d != test.params.d || rep.params.r != test.params.r) {
        throw StructuralError("build_ideal_strategy: representation and test use different (d, r)");
    }
    const auto &sys = test.ls.system;
    Strategy s;
    s.dimA = s.dimB = rep.dim;
    s.state = ideal_state(test.params);
    const ExtProjectors ext = ext_projectors(test.params);

    std::vector<ProjectorFamily> var_fam(sys.num_vars());
    for (int v = 0; v < sys.num_vars(); v++) {
        var_fam[v] = observable_to_projectors(rep[sys.var_names[v]], tol);
    }

    s.alice.resize(test.alice.size());
    const auto na = static_cast<long>(test.alice.size());
    detail::parallel_for(na, true, [&](long x) {
        const auto &q = test.alice[x];
        switch (q.kind) {
            case QuestionKind::Equation: {
                const auto &rw = sys.rows[q.row];
                std::vector<CMatrix> obs = {rep[sys.var_names[rw[0]]], rep[sys.var_names[rw[1]]],
                                            rep[sys.var_names[rw[2]]]};
                s.alice[x] = joint_family(obs, tol);  // index bit k is bit_of(a, k)
                break;
            }
            case QuestionKind::Variable: s.alice[x] = var_fam[q.var]; break;
            case QuestionKind::Ext: s.alice[x] = lift4(ext_family(ext, q.ext)); break;
            case QuestionKind::Comm: throw StructuralError("Alice has no commutation questions");
        }
    });

    const ProjectorFamily n1 = lift4(ext.n1), n2 = lift4(ext.n2);
    for (const auto &q : test.bob) {
        switch (q.kind) {
            case QuestionKind::Variable: s.bob.push_back(var_fam[q.var]); break;
            case QuestionKind::Ext: s.bob.push_back(lift4(ext_family(ext, q.ext))); break;
            case QuestionKind::Comm: {
                // Measure the Ext question, then x(s); the two commute here.
                const auto &e = q.ext == ExtId::N1 ? n1 : n2;
                ProjectorFamily f;
                for (int b1 = 0; b1 < 3; b1++) {
                    for (int b2 = 0; b2 < 2; b2++) {
                        f.push_back(matmul(e[b1], var_fam[q.var][b2]));
                    }
                }
                s.bob.push_back(std::move(f));
                break;
            }
            case QuestionKind::Equation: throw StructuralError("Bob has no equation questions");
        }
    }
    return s;
}

double strategy_residual(const Strategy &s) {
    double worst = std::abs(frobenius_norm(s.state) - 1.0);
    for (const auto *side : {&s.alice, &s.bob}) {
        for (const auto &f : *side) {
            worst = std::max({worst, completeness_residual(f), orthogonality_residual(f)});
        }
    }
    return worst;
}

CMatrix apply_local(const CMatrix &state, const CMatrix &a, const CMatrix &b) {
    return matmul(matmul(a, state), b.transpose());
}

cplx expectation(const CMatrix &state, const CMatrix &a, const CMatrix &b) {
    return frobenius_inner(state, apply_local(state, a, b));
}

Correlation generate_correlation(const Strategy &s, const FullTest &test, Exec exec) {
    if (s.alice.size() != test.alice.size() || s.bob.size() != test.bob.size()) {
        throw StructuralError("generate_correlation: strategy does not cover the test's questions");
    }
    if (static_cast<int>(s.state.rows()) != s.dimA || static_cast<int>(s.state.cols()) != s.dimB) {
        throw StructuralError("generate_correlation: state shape does not match (dimA, dimB)");
    }
    const bool par = exec == Exec::Parallel;
    const CMatrix state_h = s.state.adjoint();

    // L[x][a] = psi^dagger M_x^a psi, so p(a,b) = sum_jl L_jl (N_y^b)_jl.
    const auto na = static_cast<long>(test.alice.size());
    std::vector<std::vector<CMatrix>> left(na);
    detail::parallel_for(na, par, [&](long x) {
        for (const auto &m : s.alice[x]) {
            if (static_cast<int>(m.rows()) != s.dimA || static_cast<int>(m.cols()) != s.dimA) {
                throw StructuralError("generate_correlation: Alice projector has the wrong dimension");
            }
            left[x].push_back(matmul_serial(state_h, matmul_serial(m, s.state)));
        }
    });

    Correlation c;
    c.d = test.params.d;
    c.r = test.params.r;
    c.entries.resize(test.support.size());
    const auto np = static_cast<long>(test.support.size());
    detail::parallel_for(np, par, [&](long k) {
        const auto &pr = test.support[k];
        const auto &fam_b = s.bob[pr.y];
        auto &e = c.entries[k];
        e.x = pr.x;
        e.y = pr.y;
        e.na = static_cast<int>(left[pr.x].size());
        e.nb = static_cast<int>(fam_b.size());
        for (const auto &nmat : fam_b) {
            if (static_cast<int>(nmat.rows()) != s.dimB || static_cast<int>(nmat.cols()) != s.dimB) {
                throw StructuralError("generate_correlation: Bob projector has the wrong dimension");
            }
        }
        e.p.assign(static_cast<std::size_t>(e.na) * e.nb, 0.0);
        for (int a = 0; a < e.na; a++) {
            const auto &l = left[pr.x][a];
            for (int b = 0; b < e.nb; b++) {
                const auto &nmat = fam_b[b];
                cplx acc = 0;
                for (std::size_t q = 0; q < l.size(); q++) {
                    acc += l.data()[q] * nmat.data()[q];
                }
                e.p[a * e.nb + b] = acc.real();
            }
        }
    });
    return c;
}

double correlation_residual(const Correlation &c) {
    double worst = 0.0;
    for (const auto &e : c.entries) {
        double sum = 0.0;
        for (double v : e.p) {
            sum += v;
            worst = std::max(worst, -v);
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

CMatrix alice_marginal(const Strategy &s, const FullTest &test, const std::string &var) {
    const auto &sys = test.ls.system;
    auto it = sys.var_index.find(var);
    if (it == sys.var_index.end()) {
        throw StructuralError("alice_marginal: unknown variable " + var);
    }
    for (int i = 0; i < sys.num_rows(); i++) {
        int pos = sys.position(i, it->second);
        if (pos < 0) {
            continue;
        }
        const auto &fam = s.alice[test.alice_at("eq:" + std::to_string(i))];
        CMatrix m = CMatrix::zeros(s.dimA, s.dimA);
        for (int a = 0; a < static_cast<int>(fam.size()); a++) {
            if (bit_of(a, pos)) {
                m -= fam[a];
            } else {
                m += fam[a];
            }
        }
        return m;
    }
    throw StructuralError("alice_marginal: variable " + var + " appears in no equation");
}

CMatrix alice_variable_observable(const Strategy &s, const FullTest &test, const std::string &var) {
    return projectors_to_observable(s.alice[test.alice_at("var:" + var)]);
}

CMatrix bob_observable(const Strategy &s, const FullTest &test, const std::string &var) {
    return projectors_to_observable(s.bob[test.bob_at("var:" + var)]);
}

}  // namespace lsself
