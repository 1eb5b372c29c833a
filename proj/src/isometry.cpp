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

#include "lsself/isometry.h"

#include <algorithm>
#include <cmath>

#include "lsself/errors.h"
#include "lsself/evaluation.h"

namespace lsself {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Standard: return "standard";
        case Variant::Prime: return "prime";
        case Variant::DoublePrime: return "double_prime";
    }
    return "?";
}

int control_exponent(const PrimeParams &params, Variant v, Party party, int c) {
    const int d = params.d;
    if (c < 0 || c >= d) {
        throw DomainError("control_exponent: control value out of range");
    }
    if (c == 0) {
        return 0;
    }
    bool mirrored = false;
    switch (v) {
        case Variant::Standard: mirrored = party == Party::Alice; break;
        case Variant::Prime: mirrored = false; break;
        case Variant::DoublePrime: mirrored = true; break;
    }
    return discrete_log(params, mirrored ? d - c : c) % (d - 1);
}

PartyOperators party_operators(const Strategy &s, const FullTest &test, Party party) {
    auto obs = [&](const std::string &v) {
        return party == Party::Alice ? alice_marginal(s, test, v) : bob_observable(s, test, v);
    };
    PartyOperators ops;
    ops.O = matmul(obs("a1"), obs("a2"));
    ops.U = matmul(obs("a3"), obs("a4"));
    ops.f0 = obs("f0");
    ops.f2 = obs("f2");
    ops.g0 = obs("g0");
    ops.g2 = obs("g2");
    return ops;
}

CMatrix phi1_isometry(const CMatrix &O, const CMatrix &U, const PrimeParams &params, Variant v, Party party) {
    const int d = params.d;
    const std::size_t n = O.rows();
    if (O.cols() != n || U.rows() != n || U.cols() != n) {
        throw StructuralError("phi1_isometry: O and U must be square of equal size");
    }
    const CMatrix f = qft(d);
    const CMatrix finv = f.adjoint();

    std::vector<CMatrix> opow(d);
    opow[0] = CMatrix::identity(n);
    for (int k = 1; k < d; k++) {
        opow[k] = matmul(opow[k - 1], O);
    }
    std::vector<CMatrix> upow(d - 1);
    upow[0] = CMatrix::identity(n);
    for (int e = 1; e < d - 1; e++) {
        upow[e] = matmul(upow[e - 1], U);
    }

    CMatrix iso(n * d, n);
    for (int c = 0; c < d; c++) {
        // Amplitude of |x_c> after QFT, controlled O^k, inverse QFT.
        CMatrix k_c(n, n);
        for (int k = 0; k < d; k++) {
            k_c += (finv(c, k) * f(k, 0)) * opow[k];
        }
        k_c = matmul(upow[control_exponent(params, v, party, c)], k_c);
        for (std::size_t h = 0; h < n; h++) {
            for (std::size_t col = 0; col < n; col++) {
                iso(h * d + c, col) = k_c(h, col);
            }
        }
    }
    return iso;
}

CMatrix phi2_isometry(const CMatrix &f0, const CMatrix &f2, const CMatrix &g0, const CMatrix &g2) {
    const std::size_t n = f0.rows();
    const CMatrix id = CMatrix::identity(n);
    // Branches of one swap gadget: |0> (I + Z)/2 and |1> X (I - Z)/2.
    auto branches = [&](const CMatrix &z, const CMatrix &x) {
        return std::vector<CMatrix>{0.5 * (id + z), matmul(x, 0.5 * (id - z))};
    };
    const auto q1 = branches(g2, f2);
    const auto q2 = branches(g0, f0);
    CMatrix iso(n * 4, n);
    for (int b1 = 0; b1 < 2; b1++) {
        for (int b2 = 0; b2 < 2; b2++) {
            const CMatrix k = matmul(q2[b2], q1[b1]);
            for (std::size_t h = 0; h < n; h++) {
                for (std::size_t col = 0; col < n; col++) {
                    iso(h * 4 + 2 * b1 + b2, col) = k(h, col);
                }
            }
        }
    }
    return iso;
}

CMatrix party_isometry(const PartyOperators &ops, const PrimeParams &params, Variant v, Party party) {
    const int d = params.d;
    const std::size_t n = ops.O.rows();
    const CMatrix v1 = phi1_isometry(ops.O, ops.U, params, v, party);
    const CMatrix v2 = phi2_isometry(ops.f0, ops.f2, ops.g0, ops.g2);
    // Gather Phi_1 blocks per control value, then apply Phi_2 to each.
    CMatrix iso(n * 4 * d, n);
    for (int c = 0; c < d; c++) {
        CMatrix k_c(n, n);
        for (std::size_t h = 0; h < n; h++) {
            for (std::size_t col = 0; col < n; col++) {
                k_c(h, col) = v1(h * d + c, col);
            }
        }
        const CMatrix w = matmul(v2, k_c);
        for (std::size_t row = 0; row < n * 4; row++) {
            for (std::size_t col = 0; col < n; col++) {
                iso(row * d + c, col) = w(row, col);
            }
        }
    }
    return iso;
}

namespace {

// Applies iso (rows (h', extra), cols h) to the leading factor of the row
// index of coef, whose rows are (h, rest). Output rows (h', extra, rest).
CMatrix apply_rows(const CMatrix &iso, std::size_t n, std::size_t rest, const CMatrix &coef) {
    const std::size_t extra = iso.rows() / n;
    const std::size_t cols = coef.cols();
    CMatrix out(n * extra * rest, cols);
    for (std::size_t t = 0; t < rest; t++) {
        CMatrix slice(n, cols);
        for (std::size_t h = 0; h < n; h++) {
            std::copy(coef.data() + (h * rest + t) * cols, coef.data() + (h * rest + t + 1) * cols,
                      slice.data() + h * cols);
        }
        const CMatrix moved = matmul(iso, slice);
        for (std::size_t row = 0; row < n * extra; row++) {
            std::copy(moved.data() + row * cols, moved.data() + (row + 1) * cols, out.data() + (row * rest + t) * cols);
        }
    }
    return out;
}

std::size_t product(const std::vector<int> &dims, std::size_t from) {
    std::size_t p = 1;
    for (std::size_t k = from; k < dims.size(); k++) {
        p *= dims[k];
    }
    return p;
}

}  // namespace

BipartiteState apply_phi1(const PartyOperators &alice, const PartyOperators &bob, const PrimeParams &params,
                          const CMatrix &state, Variant v) {
    const int d = params.d;
    const int na = static_cast<int>(alice.O.rows());
    const int nb = static_cast<int>(bob.O.rows());
    if (static_cast<int>(state.rows()) != na || static_cast<int>(state.cols()) != nb) {
        throw StructuralError("apply_phi1: state shape does not match the operators");
    }
    const CMatrix va = phi1_isometry(alice.O, alice.U, params, v, Party::Alice);
    const CMatrix vb = phi1_isometry(bob.O, bob.U, params, v, Party::Bob);
    return {matmul(matmul(va, state), vb.transpose()), {na, d}, {nb, d}};
}

BipartiteState apply_phi2(const PartyOperators &alice, const PartyOperators &bob, const BipartiteState &in) {
    const std::size_t na = alice.f0.rows();
    const std::size_t nb = bob.f0.rows();
    if (in.a_dims.empty() || in.b_dims.empty() || static_cast<std::size_t>(in.a_dims[0]) != na ||
        static_cast<std::size_t>(in.b_dims[0]) != nb) {
        throw StructuralError("apply_phi2: leading register does not match the operators");
    }
    const CMatrix va = phi2_isometry(alice.f0, alice.f2, alice.g0, alice.g2);
    const CMatrix vb = phi2_isometry(bob.f0, bob.f2, bob.g0, bob.g2);
    const CMatrix left = apply_rows(va, na, product(in.a_dims, 1), in.coef);
    const CMatrix both = apply_rows(vb, nb, product(in.b_dims, 1), left.transpose()).transpose();
    BipartiteState out{both, in.a_dims, in.b_dims};
    out.a_dims.insert(out.a_dims.begin() + 1, {2, 2});
    out.b_dims.insert(out.b_dims.begin() + 1, {2, 2});
    return out;
}

Variant label_variant(const std::string &label) {
    if (label == "M1_psi" || label == "M2_psi") return Variant::Prime;
    if (label == "N1_psi" || label == "N2_psi") return Variant::DoublePrime;
    for (const auto &l : selftest_labels()) {
        if (l == label) return Variant::Standard;
    }
    throw DomainError("unknown self-test label '" + label + "'");
}

CMatrix control_target(const PrimeParams &params, const std::string &label) {
    const int d = params.d;
    const long rinv = inverse_mod(params.r, d);
    CMatrix t(d, d);
    for (int j = 1; j < d; j++) {
        const int mj = d - j;
        if (label == "psi") {
            t(mj, j) = 1.0;
        } else if (label == "OA_psi") {
            t(mj, j) = params.omega(mj);
        } else if (label == "OB_psi") {
            t(mj, j) = params.omega(j);
        } else if (label == "UA_psi") {
            t(mj * rinv % d, j) = 1.0;
        } else if (label == "UB_psi") {
            t(mj, j * rinv % d) = 1.0;
        } else if (label == "M1_psi" || label == "N1_psi") {
            t(j, j) = params.omega(j);
        } else if (label == "M2_psi" || label == "N2_psi") {
            t(j, j) = 1.0;
        } else {
            throw DomainError("unknown self-test label '" + label + "'");
        }
    }
    t *= 1.0 / std::sqrt(static_cast<double>(d - 1));
    return t;
}

JunkExtraction extract_junk(const CMatrix &out, int nA, int nB, int d, const CMatrix &target) {
    const std::size_t ra = static_cast<std::size_t>(4 * d);
    const std::size_t rb = ra;
    if (out.rows() != nA * ra || out.cols() != nB * rb || target.rows() != static_cast<std::size_t>(d) ||
        target.cols() != static_cast<std::size_t>(d)) {
        throw StructuralError("extract_junk: shapes do not match");
    }
    // Register target: EPR (x) EPR on the ancillas times the control target.
    CMatrix reg(ra, rb);
    for (int a = 0; a < 4; a++) {
        for (int ca = 0; ca < d; ca++) {
            for (int cb = 0; cb < d; cb++) {
                reg(a * d + ca, a * d + cb) = 0.5 * target(ca, cb);
            }
        }
    }
    JunkExtraction res;
    res.junk = CMatrix(nA, nB);
    for (int ha = 0; ha < nA; ha++) {
        for (int hb = 0; hb < nB; hb++) {
            cplx acc = 0;
            for (std::size_t p = 0; p < ra; p++) {
                for (std::size_t q = 0; q < rb; q++) {
                    const cplx t = reg(p, q);
                    if (t != cplx(0.0)) {
                        acc += std::conj(t) * out(ha * ra + p, hb * rb + q);
                    }
                }
            }
            res.junk(ha, hb) = acc;
        }
    }
    double dist2 = 0.0;
    for (int ha = 0; ha < nA; ha++) {
        for (int hb = 0; hb < nB; hb++) {
            const cplx j = res.junk(ha, hb);
            for (std::size_t p = 0; p < ra; p++) {
                for (std::size_t q = 0; q < rb; q++) {
                    dist2 += std::norm(out(ha * ra + p, hb * rb + q) - j * reg(p, q));
                }
            }
        }
    }
    res.distance = std::sqrt(dist2);
    return res;
}

namespace {

struct LabelState {
    CMatrix state;
    Variant variant;
};

}  // namespace

SelfTestReport selftest_report(const Strategy &s, const FullTest &test, const Correlation &ideal) {
    const auto &params = test.params;
    const PartyOperators alice = party_operators(s, test, Party::Alice);
    const PartyOperators bob = party_operators(s, test, Party::Bob);
    const CMatrix ia = CMatrix::identity(s.dimA);
    const CMatrix ib = CMatrix::identity(s.dimB);
    const CMatrix m1 = alice_variable_observable(s, test, "a1");
    const CMatrix m2 = alice_variable_observable(s, test, "a2");
    const CMatrix n1 = bob_observable(s, test, "a1");
    const CMatrix n2 = bob_observable(s, test, "a2");

    auto state_for = [&](const std::string &label) -> CMatrix {
        if (label == "psi") return s.state;
        if (label == "OA_psi") return apply_local(s.state, alice.O, ib);
        if (label == "OB_psi") return apply_local(s.state, ia, bob.O);
        if (label == "UA_psi") return apply_local(s.state, alice.U, ib);
        if (label == "UB_psi") return apply_local(s.state, ia, bob.U);
        if (label == "M1_psi") return apply_local(s.state, m1, ib);
        if (label == "M2_psi") return apply_local(s.state, m2, ib);
        if (label == "N1_psi") return apply_local(s.state, ia, n1);
        return apply_local(s.state, ia, n2);
    };

    std::vector<CMatrix> iso_a(3), iso_b(3);
    for (auto v : {Variant::Standard, Variant::Prime, Variant::DoublePrime}) {
        const int k = static_cast<int>(v);
        iso_a[k] = party_isometry(alice, params, v, Party::Alice);
        iso_b[k] = party_isometry(bob, params, v, Party::Bob);
    }

    SelfTestReport rep;
    for (const auto &label : selftest_labels()) {
        const int k = static_cast<int>(label_variant(label));
        const CMatrix out = matmul(matmul(iso_a[k], state_for(label)), iso_b[k].transpose());
        const auto ex = extract_junk(out, s.dimA, s.dimB, params.d, control_target(params, label));
        rep.distances.emplace_back(label, ex.distance);
        rep.junk_norms.emplace_back(label, frobenius_norm(ex.junk));
        if (label == "psi") {
            rep.junk_norm = frobenius_norm(ex.junk);
        }
    }
    rep.epsilon = correlation_distance(generate_correlation(s, test), ideal, test);
    return rep;
}

double variant_consistency(const Strategy &s, const FullTest &test) {
    const auto &params = test.params;
    const int d = params.d;
    const PartyOperators alice = party_operators(s, test, Party::Alice);
    const PartyOperators bob = party_operators(s, test, Party::Bob);
    std::vector<CMatrix> rhos;
    for (auto v : {Variant::Standard, Variant::Prime, Variant::DoublePrime}) {
        const CMatrix out = matmul(matmul(party_isometry(alice, params, v, Party::Alice), s.state),
                                   party_isometry(bob, params, v, Party::Bob).transpose());
        CMatrix rho(16, 16);
        for (int ha = 0; ha < s.dimA; ha++) {
            for (int hb = 0; hb < s.dimB; hb++) {
                for (int ca = 0; ca < d; ca++) {
                    for (int cb = 0; cb < d; cb++) {
                        for (int p = 0; p < 16; p++) {
                            const cplx x = out((ha * 4 + p / 4) * d + ca, (hb * 4 + p % 4) * d + cb);
                            if (x == cplx(0.0)) {
                                continue;
                            }
                            for (int q = 0; q < 16; q++) {
                                rho(p, q) += x * std::conj(out((ha * 4 + q / 4) * d + ca, (hb * 4 + q % 4) * d + cb));
                            }
                        }
                    }
                }
            }
        }
        rhos.push_back(std::move(rho));
    }
    double worst = 0.0;
    for (std::size_t k = 1; k < rhos.size(); k++) {
        worst = std::max(worst, max_abs(rhos[k] - rhos[0]));
    }
    return worst;
}

}  // namespace lsself
