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

#include "lsself/evaluation.h"

#include <cmath>
#include <numbers>

#include "lsself/errors.h"

namespace lsself {

WeightedChshContext WeightedChshContext::make(double alpha) {
    const double min_alpha = 1.0 / std::tan(std::numbers::pi / 3.0);
    if (!std::isfinite(alpha) || std::abs(alpha) < min_alpha - 1e-15) {
        throw DomainError("weighted CHSH: |alpha| must be at least cot(pi/3)");
    }
    WeightedChshContext ctx;
    ctx.alpha = alpha;
    ctx.mu = std::atan(1.0 / alpha);
    ctx.c = std::cos(ctx.mu);
    ctx.s = std::sin(ctx.mu);
    if (ctx.s == 0.0) {
        throw DomainError("weighted CHSH: sin(mu) is zero");
    }
    ctx.imax = 2.0 * std::sqrt(1.0 + alpha * alpha);
    return ctx;
}

QubitChshStrategy ideal_chsh_strategy(const WeightedChshContext &ctx) {
    QubitChshStrategy q;
    q.state = CMatrix(2, 2);
    q.state(0, 0) = q.state(1, 1) = 1.0 / std::sqrt(2.0);
    const CMatrix z = pauli_z(), x = pauli_x();
    q.M1 = z;
    q.M2 = x;
    q.N1 = ctx.c * z + ctx.s * x;
    q.N2 = ctx.c * z - ctx.s * x;
    return q;
}

namespace {

void require_observable(const CMatrix &m, const char *name, double tol) {
    double res = involution_residual(m);
    if (res > tol) {
        throw PreconditionError(std::string("weighted CHSH: ") + name + " is not a binary observable", res);
    }
}

}  // namespace

double weighted_chsh_value(const CMatrix &state, const CMatrix &M1, const CMatrix &M2, const CMatrix &N1,
                           const CMatrix &N2, const WeightedChshContext &ctx, double tol) {
    require_observable(M1, "M1", tol);
    require_observable(M2, "M2", tol);
    require_observable(N1, "N1", tol);
    require_observable(N2, "N2", tol);
    auto e = [&](const CMatrix &a, const CMatrix &b) { return expectation(state, a, b).real(); };
    return ctx.alpha * e(M1, N1) + ctx.alpha * e(M1, N2) + e(M2, N1) - e(M2, N2);
}

CMatrix shifted_bell_operator(const CMatrix &M1, const CMatrix &M2, const CMatrix &N1, const CMatrix &N2,
                              const WeightedChshContext &ctx) {
    CMatrix bell = ctx.alpha * kron(M1, N1) + ctx.alpha * kron(M1, N2) + kron(M2, N1) - kron(M2, N2);
    return ctx.imax * CMatrix::identity(bell.rows()) - bell;
}

SosResiduals sos_residuals(const CMatrix &M1, const CMatrix &M2, const CMatrix &N1, const CMatrix &N2,
                           const WeightedChshContext &ctx, double tol) {
    require_observable(M1, "M1", tol);
    require_observable(M2, "M2", tol);
    require_observable(N1, "N1", tol);
    require_observable(N2, "N2", tol);
    const double c = ctx.c, s = ctx.s;
    const CMatrix ia = CMatrix::identity(M1.rows());
    const CMatrix ib = CMatrix::identity(N1.rows());
    const CMatrix bar = shifted_bell_operator(M1, M2, N1, N2, ctx);

    const CMatrix za = kron(M1, ib);
    const CMatrix xa = kron(M2, ib);
    const CMatrix zb = kron(ia, (1.0 / (2.0 * c)) * (N1 + N2));
    const CMatrix xb = kron(ia, (1.0 / (2.0 * s)) * (N1 - N2));

    const CMatrix t = za * xb + xa * zb;
    const CMatrix sos1 = 0.25 * (s * (bar * bar) + (4.0 * s * c * c) * (t * t));
    const CMatrix dz = za - zb;
    const CMatrix dx = xa - xb;
    const CMatrix sos2 = (c * c / s) * (dz * dz) + s * (dx * dx);
    return {operator_norm(bar - sos1), operator_norm(bar - sos2)};
}

double ls_winning_probability(const Correlation &c, const FullTest &test) {
    if (c.entries.size() != test.support.size()) {
        throw StructuralError("ls_winning_probability: correlation does not match the test");
    }
    const auto &sys = test.ls.system;
    double total = 0.0;
    int pairs = 0;
    for (std::size_t k = 0; k < test.support.size(); k++) {
        const auto &pr = test.support[k];
        if (pr.block != Block::LS) {
            continue;
        }
        const auto &e = c.entries[k];
        const auto &qa = test.alice[pr.x];
        const auto &qb = test.bob[pr.y];
        const int pos = sys.position(qa.row, qb.var);
        double win = 0.0;
        for (int a = 0; a < 8; a++) {
            if (satisfies(sys, qa.row, a)) {
                win += e(a, bit_of(a, pos));
            }
        }
        total += win;
        pairs++;
    }
    if (pairs == 0) {
        throw StructuralError("ls_winning_probability: test has no LS pairs");
    }
    return total / pairs;
}

double ls_winning_probability(const Strategy &s, const FullTest &test) {
    return ls_winning_probability(generate_correlation(s, test), test);
}

double correlation_distance(const Correlation &c1, const Correlation &c2, const std::vector<double> &weights) {
    if (c1.entries.size() != c2.entries.size() || c1.entries.size() != weights.size()) {
        throw StructuralError("correlation_distance: supports differ");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < weights.size(); k++) {
        const auto &e1 = c1.entries[k];
        const auto &e2 = c2.entries[k];
        if (e1.x != e2.x || e1.y != e2.y || e1.p.size() != e2.p.size()) {
            throw StructuralError("correlation_distance: supports differ");
        }
        double l1 = 0.0;
        for (std::size_t q = 0; q < e1.p.size(); q++) {
            l1 += std::abs(e1.p[q] - e2.p[q]);
        }
        total += weights[k] * l1;
    }
    return total;
}

double correlation_distance(const Correlation &c1, const Correlation &c2, const FullTest &test) {
    return correlation_distance(c1, c2, std::vector<double>(test.support.size(), test.pi()));
}

double ext_chsh_value(const Correlation &c, const FullTest &test) {
    if (c.entries.size() != test.support.size()) {
        throw StructuralError("ext_chsh_value: correlation does not match the test");
    }
    const int x1 = test.alice_at("ext:n+1"), x2 = test.alice_at("ext:n+2");
    const int y1 = test.bob_at("var:a2"), y2 = test.bob_at("var:a1");
    auto corr = [&](int x, int y) {
        for (std::size_t k = 0; k < test.support.size(); k++) {
            const auto &pr = test.support[k];
            if (pr.block == Block::Ext && pr.x == x && pr.y == y) {
                const auto &e = c.entries[k];
                return e(0, 0) - e(0, 1) - e(1, 0) + e(1, 1);
            }
        }
        throw StructuralError("ext_chsh_value: EXT pair missing from the test");
    };
    const int d = test.params.d;
    const double alpha = 1.0 / std::tan(std::numbers::pi / d);
    const double raw = alpha * corr(x1, y1) + alpha * corr(x1, y2) + corr(x2, y1) - corr(x2, y2);
    return 0.5 * (d - 1) * raw;
}

EvalReport evaluate(const Correlation &c, const FullTest &test, const Correlation &ideal) {
    EvalReport rep;
    rep.winning_probability = ls_winning_probability(c, test);
    const auto ctx = WeightedChshContext::make(1.0 / std::tan(std::numbers::pi / test.params.d));
    rep.alpha = ctx.alpha;
    rep.imax = ctx.imax;
    rep.chsh_value = ext_chsh_value(c, test);
    const auto q = ideal_chsh_strategy(ctx);
    rep.sos = sos_residuals(q.M1, q.M2, q.N1, q.N2, ctx);
    rep.epsilon = correlation_distance(c, ideal, test);
    return rep;
}

}  // namespace lsself
