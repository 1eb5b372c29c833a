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

#include "lsself/robustness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "lsself/errors.h"
#include "lsself/evaluation.h"
#include "parallel.h"

namespace lsself {

std::string kind_name(PerturbationKind k) {
    switch (k) {
        case PerturbationKind::StateNoise: return "state";
        case PerturbationKind::ObservableRotation: return "rotation";
        case PerturbationKind::Both: return "both";
    }
    return "?";
}

PerturbationKind parse_kind(const std::string &name) {
    if (name == "state") return PerturbationKind::StateNoise;
    if (name == "rotation") return PerturbationKind::ObservableRotation;
    if (name == "both") return PerturbationKind::Both;
    throw DomainError("unknown perturbation kind '" + name + "' (expected state, rotation or both)");
}

namespace {

std::mt19937_64 make_rng(uint64_t seed, uint32_t stream, uint32_t index) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), stream, index};
    return std::mt19937_64(seq);
}

CMatrix gaussian(std::mt19937_64 &rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix m(rows, cols);
    for (std::size_t k = 0; k < m.size(); k++) {
        const double re = normal(rng);
        const double im = normal(rng);
        m.data()[k] = cplx(re, im);
    }
    return m;
}

CMatrix random_rotation(uint64_t seed, uint32_t stream, uint32_t index, std::size_t n, double delta) {
    auto rng = make_rng(seed, stream, index);
    CMatrix a = gaussian(rng, n, n);
    CMatrix h = 0.5 * (a + a.adjoint());
    h *= 1.0 / operator_norm(h);
    return expm_i_hermitian(h, delta);
}

void rotate_families(std::vector<ProjectorFamily> &families, uint64_t seed, uint32_t stream, double delta) {
    detail::parallel_for(static_cast<long>(families.size()), true, [&](long q) {
        auto &fam = families[q];
        const CMatrix u = random_rotation(seed, stream, static_cast<uint32_t>(q), fam[0].rows(), delta);
        const CMatrix uh = u.adjoint();
        for (auto &p : fam) {
            p = matmul(matmul(u, p), uh);
        }
    });
}

}  // namespace

Strategy perturb_strategy(const Strategy &ideal, const PerturbationSpec &spec) {
    if (!(spec.delta >= 0.0 && spec.delta <= 0.5)) {
        throw DomainError("perturbation magnitude must lie in [0, 0.5]");
    }
    Strategy s = ideal;
    if (spec.delta == 0.0) {
        return s;
    }
    if (spec.kind != PerturbationKind::ObservableRotation) {
        auto rng = make_rng(spec.seed, 0, 0);
        CMatrix g = gaussian(rng, s.state.rows(), s.state.cols());
        g *= 1.0 / frobenius_norm(g);
        s.state += spec.delta * g;
        s.state *= 1.0 / frobenius_norm(s.state);
    }
    if (spec.kind != PerturbationKind::StateNoise) {
        rotate_families(s.alice, spec.seed, 1, spec.delta);
        rotate_families(s.bob, spec.seed, 2, spec.delta);
    }
    return s;
}

NamedValues relation_residuals(const Strategy &s, const FullTest &test) {
    const auto &sys = test.ls.system;
    const int nvars = sys.num_vars();
    const CMatrix &psi = s.state;
    const CMatrix ia = CMatrix::identity(s.dimA);
    const CMatrix ib = CMatrix::identity(s.dimB);

    std::vector<CMatrix> ma(nvars), nb(nvars);
    detail::parallel_for(nvars, true, [&](long v) {
        ma[v] = alice_marginal(s, test, sys.var_names[v]);
        nb[v] = bob_observable(s, test, sys.var_names[v]);
    });
    auto alice_only = [&](const CMatrix &a, const CMatrix &st) { return matmul(a, st); };
    auto bob_only = [&](const CMatrix &b, const CMatrix &st) { return matmul(st, b.transpose()); };

    double mn = 0.0;
    for (int v = 0; v < nvars; v++) {
        mn = std::max(mn, frobenius_norm(apply_local(psi, ma[v], nb[v]) - psi));
    }

    double eq = 0.0;
    for (int i = 0; i < sys.num_rows(); i++) {
        const auto &rw = sys.rows[i];
        CMatrix st = alice_only(ma[rw[2]], psi);
        st = alice_only(ma[rw[1]], st);
        st = alice_only(ma[rw[0]], st);
        const double sign = sys.rhs[i] ? -1.0 : 1.0;
        eq = std::max(eq, frobenius_norm(st - sign * psi));
    }

    const int r = test.params.r;
    auto conj_res = [&](const CMatrix &o, const CMatrix &u, bool alice) {
        const CMatrix uh = u.adjoint();
        const CMatrix lhs = matmul(o, uh);
        const CMatrix rhs = matmul(uh, matrix_power(o, r));
        return alice ? frobenius_norm(alice_only(lhs, psi) - alice_only(rhs, psi))
                     : frobenius_norm(bob_only(lhs, psi) - bob_only(rhs, psi));
    };
    const int a1 = sys.var_index.at("a1"), a2 = sys.var_index.at("a2");
    const int a3 = sys.var_index.at("a3"), a4 = sys.var_index.at("a4");
    const double conj_a = conj_res(matmul(ma[a1], ma[a2]), matmul(ma[a3], ma[a4]), true);
    const double conj_b = conj_res(matmul(nb[a1], nb[a2]), matmul(nb[a3], nb[a4]), false);

    const auto &p1 = s.alice[test.alice_at("ext:n+1")];
    const auto &p2 = s.alice[test.alice_at("ext:n+2")];
    const CMatrix m_n2 = p2[0] - p2[1];
    const cplx i(0.0, 1.0);
    const CMatrix k1 = 0.5 * (p1[0] + i * matmul(m_n2, p1[1]) - i * matmul(m_n2, p1[0]) + p1[1]);
    const CMatrix psi1 = alice_only(k1, psi);
    const int d = test.params.d;
    const double psi1_norm = std::abs(std::pow(frobenius_norm(psi1), 2) - 1.0 / (d - 1));

    const CMatrix n12 = matmul(bob_observable(s, test, "a1"), bob_observable(s, test, "a2"));
    const CMatrix m12 =
        matmul(alice_variable_observable(s, test, "a1"), alice_variable_observable(s, test, "a2"));
    const double psi1_bob = frobenius_norm(bob_only(n12, psi1) - test.params.omega(1) * psi1);
    const double psi1_alice = frobenius_norm(alice_only(m12, psi1) - test.params.omega(-1) * psi1);

    double comm = 0.0;
    for (const auto &v : comm_variables()) {
        const CMatrix &m = ma[sys.var_index.at(v)];
        for (const CMatrix *x : {&p1[0], &p1[1], &m_n2}) {
            comm = std::max(comm, frobenius_norm(alice_only(matmul(*x, m), psi) - alice_only(matmul(m, *x), psi)));
        }
    }
    (void)ia;
    (void)ib;

    return {{"mn", mn},
            {"equation", eq},
            {"conj_A", conj_a},
            {"conj_B", conj_b},
            {"psi1_norm", psi1_norm},
            {"psi1_bob", psi1_bob},
            {"psi1_alice", psi1_alice},
            {"comm", comm}};
}

double SweepRecord::max_distance() const {
    double m = 0.0;
    for (const auto &[label, v] : report.distances) {
        m = std::max(m, v);
    }
    return m;
}

std::vector<SweepRecord> run_sweep(const SweepConfig &cfg) {
    const PrimeParams params = make_prime_params(cfg.d, cfg.r);
    if (4 * (params.d - 1) > cfg.max_local_dim) {
        throw ResourceError("run_sweep: local dimension " + std::to_string(4 * (params.d - 1)) +
                            " exceeds the cap " + std::to_string(cfg.max_local_dim));
    }
    if (cfg.trials < 1) {
        throw DomainError("run_sweep: trials must be positive");
    }
    for (double m : cfg.magnitudes) {
        if (!(m >= 0.0 && m <= 0.5)) {
            throw DomainError("run_sweep: magnitudes must lie in [0, 0.5]");
        }
    }
    const FullTest test = build_full_test(params);
    const Rep rep = build_representation(params);
    const Strategy ideal = build_ideal_strategy(test, rep);
    const Correlation ideal_corr = generate_correlation(ideal, test);

    std::vector<SweepRecord> records;
    for (auto kind : cfg.kinds) {
        for (double delta : cfg.magnitudes) {
            for (int t = 0; t < cfg.trials; t++) {
                SweepRecord rec;
                rec.d = params.d;
                rec.r = params.r;
                rec.spec = {kind, delta, cfg.seed + static_cast<uint64_t>(t)};
                records.push_back(std::move(rec));
            }
        }
    }
    for (auto &rec : records) {
        const Strategy s = perturb_strategy(ideal, rec.spec);
        rec.report = selftest_report(s, test, ideal_corr);
        rec.epsilon = rec.report.epsilon;
        rec.residuals = relation_residuals(s, test);
    }
    return records;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRecord> &records) {
    std::ostringstream out;
    out << "d,r,kind,delta,seed,epsilon";
    for (const auto &l : selftest_labels()) {
        out << ",dist_" << l.substr(0, l.find("_psi") == std::string::npos ? l.size() : l.find("_psi"));
    }
    out << ",junk_norm";
    if (!records.empty()) {
        for (const auto &[name, v] : records[0].residuals) {
            out << ",res_" << name;
        }
    }
    out << "\n";
    for (const auto &rec : records) {
        out << rec.d << "," << rec.r << "," << kind_name(rec.spec.kind) << "," << num(rec.spec.delta) << ","
            << rec.spec.seed << "," << num(rec.epsilon);
        for (const auto &[label, v] : rec.report.distances) {
            out << "," << num(v);
        }
        out << "," << num(rec.report.junk_norm);
        for (const auto &[name, v] : rec.residuals) {
            out << "," << num(v);
        }
        out << "\n";
    }
    return out.str();
}

BoundFit fit_bound(const std::vector<BoundPoint> &points, double tau_fit) {
    std::set<double> distinct;
    for (const auto &p : points) {
        if (p.epsilon > 0.0) {
            distinct.insert(p.epsilon);
        }
    }
    if (distinct.size() < 3) {
        throw DomainError("fit_bound: need at least three distinct positive epsilon values");
    }
    BoundFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto &p : points) {
        if (p.epsilon <= 0.0) {
            continue;
        }
        fit.points++;
        fit.C_fit = std::max(fit.C_fit, p.distance / std::pow(p.epsilon, 0.125));
        if (p.distance > 0.0) {
            const double x = std::log(p.epsilon), y = std::log(p.distance);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            m++;
        }
    }
    const double den = m * sxx - sx * sx;
    fit.exponent_fit = (m >= 2 && den != 0.0) ? (m * sxy - sx * sy) / den : 0.0;
    for (const auto &p : points) {
        if (p.epsilon > 0.0 && p.distance / std::pow(p.epsilon, 0.125) > fit.C_fit * (1.0 + tau_fit)) {
            fit.violations++;
        }
    }
    return fit;
}

BoundFit fit_bound(const std::vector<SweepRecord> &records, double tau_fit) {
    std::vector<BoundPoint> pts;
    for (const auto &r : records) {
        pts.push_back({r.epsilon, r.max_distance()});
    }
    return fit_bound(pts, tau_fit);
}

}  // namespace lsself
