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

#include "lsself/representation.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lsself/errors.h"
#include "parallel.h"

namespace lsself {

const CMatrix &Rep::operator[](const std::string &name) const {
    int g = gamma.find(name);
    if (g < 0 || g >= static_cast<int>(images.size())) {
        throw StructuralError("representation has no image for generator '" + name + "'");
    }
    return images[g];
}

CMatrix &Rep::operator[](const std::string &name) {
    return const_cast<CMatrix &>(static_cast<const Rep &>(*this)[name]);
}

CMatrix u_basis_vector(const PrimeParams &params, int k) {
    const int n = params.d - 1;
    CMatrix v(n, 1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; j++) {
        long e = static_cast<long>(j) * k % n;
        v(params.rpow(j) - 1, 0) = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(e) / n);
    }
    return v;
}

namespace {

// |a><b| for columns a, b.
CMatrix ketbra(const CMatrix &a, const CMatrix &b) {
    return matmul(a, b.adjoint());
}

CMatrix unit(int n, int i, int j) {
    CMatrix m(n, n);
    m(i, j) = 1.0;
    return m;
}

// Images of o_1 = a_1, o_2 = a_2, u_1 = a_3, u_2 = a_4 on W_{d-1}; the rest
// follow from the conjugacy triples.
std::vector<CMatrix> build_base(const PrimeParams &p, const std::vector<Triple> &triples) {
    const int d = p.d;
    const int n = d - 1;
    const int half = (d - 1) / 2;
    auto x = [&](int j) { return j - 1; };

    CMatrix a1(n, n), a2(n, n);
    for (int j = 1; j <= half; j++) {
        a1(x(j), x(d - j)) = p.omega(j);
        a1(x(d - j), x(j)) = p.omega(-j);
    }
    for (int j = 1; j <= n; j++) {
        a2(x(j), x(d - j)) = 1.0;
    }

    std::vector<CMatrix> u;
    for (int k = 0; k < n; k++) {
        u.push_back(u_basis_vector(p, k));
    }
    auto wn = [&](int k) {
        long e = ((k % n) + n) % n;
        return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / n);
    };
    CMatrix a3 = ketbra(u[0], u[0]) + wn(half) * ketbra(u[half], u[half]);
    CMatrix a4 = ketbra(u[0], u[0]) + ketbra(u[half], u[half]);
    for (int k = 1; k <= (d - 3) / 2; k++) {
        a3 += wn(k) * ketbra(u[k], u[n - k]) + wn(-k) * ketbra(u[n - k], u[k]);
        a4 += ketbra(u[n - k], u[k]) + ketbra(u[k], u[n - k]);
    }

    const int na = p.r + 5;
    std::vector<CMatrix> base(na);
    std::vector<bool> known(na, false);
    base[0] = a1;
    base[1] = a2;
    base[2] = a3;
    base[3] = a4;
    std::fill(known.begin(), known.begin() + 4, true);
    // Each a_k with k > 4 is the target of exactly one triple whose i and j
    // become known earlier, so repeated passes terminate.
    for (bool progress = true; progress;) {
        progress = false;
        for (const auto &t : triples) {
            if (!known[t.k - 1] && known[t.i - 1] && known[t.j - 1]) {
                const auto &ai = base[t.i - 1];
                base[t.k - 1] = matmul(matmul(ai, base[t.j - 1]), ai);
                known[t.k - 1] = true;
                progress = true;
            }
        }
    }
    for (int i = 0; i < na; i++) {
        if (!known[i]) {
            throw StructuralError("build_representation: cannot derive a" + std::to_string(i + 1));
        }
    }
    return base;
}

}  // namespace

Rep build_representation(const PrimeParams &params) {
    Rep rep;
    rep.params = params;
    rep.gamma = build_presentation(Level::Gamma, params.r);
    const int d = params.d;
    const int n = d - 1;
    rep.dim = 4 * n;
    rep.base = build_base(params, rep.gamma.triples);

    rep.O_tilde = CMatrix(n, n);
    rep.U_tilde = CMatrix(n, n);
    for (int j = 1; j <= n; j++) {
        rep.O_tilde(j - 1, j - 1) = params.omega(j);
    }
    for (int j = 0; j < n; j++) {
        rep.U_tilde(params.rpow(j - 1) - 1, params.rpow(j) - 1) = 1.0;
    }

    const CMatrix i2 = CMatrix::identity(2);
    const CMatrix in = CMatrix::identity(n);
    const CMatrix i1 = CMatrix::identity(2 * n);
    const CMatrix x = pauli_x();
    const CMatrix z = pauli_z();
    CMatrix y(2, 2);
    y(0, 1) = cplx(0, 1);
    y(1, 0) = cplx(0, -1);
    const CMatrix e11 = unit(2, 0, 0), e22 = unit(2, 1, 1), e12 = unit(2, 0, 1), e21 = unit(2, 1, 0);

    const int na = params.r + 5;
    // Level-one images on C^2 (x) W_{d-1}.
    std::vector<CMatrix> b1(na), c1(na), d1(na);
    const CMatrix f0_1 = kron(x, in);
    for (int i = 0; i < na; i++) {
        const auto &a = rep.base[i];
        b1[i] = kron(e11, a) + kron(e22, in);
        c1[i] = kron(e11, in) + kron(e22, a);
        d1[i] = kron(x, a);
    }

    rep.images.assign(rep.gamma.generators.size(), CMatrix());
    auto set = [&](const std::string &name, CMatrix m) { rep.images[rep.gamma.index.at(name)] = std::move(m); };
    auto lift = [&](const CMatrix &m) { return kron(i2, m); };

    for (int i = 1; i <= na; i++) {
        const auto &b = b1[i - 1];
        const auto &c = c1[i - 1];
        set(gen_name(GenKind::A, i), lift(kron(i2, rep.base[i - 1])));
        set(gen_name(GenKind::B, i), lift(b));
        set(gen_name(GenKind::C, i), lift(c));
        set(gen_name(GenKind::D, i), lift(d1[i - 1]));
        CMatrix bf = matmul(b, f0_1);
        CMatrix fb = matmul(f0_1, b);
        set(gen_name(GenKind::P, i, 1), kron(x, b));
        set(gen_name(GenKind::P, i, 2), kron(e12, bf) + kron(e21, fb));
        set(gen_name(GenKind::P, i, 3), kron(e11, matmul(bf, b)) + kron(e22, f0_1));
        set(gen_name(GenKind::P, i, 4), kron(e11, matmul(b, c)) + kron(e22, i1));
        set(gen_name(GenKind::P, i, 5), kron(e11, b) + kron(e22, c));
    }

    set("f0", kron({i2, x, in}));
    set("f1", kron({x, x, in}));
    set("f2", kron({x, i2, in}));
    set("g0", kron({i2, z, in}));
    set("g1", kron({z, z, in}));
    set("g2", kron({z, i2, in}));
    set("m0", kron({z, x, in}));
    set("m1", kron({x, z, in}));
    set("m2", kron({y, y, in}));

    const auto &triples = rep.gamma.triples;
    for (int t = 1; t <= static_cast<int>(triples.size()); t++) {
        const auto &tr = triples[t - 1];
        const auto &bj = b1[tr.j - 1];
        const auto &ck = c1[tr.k - 1];
        const auto &di = d1[tr.i - 1];
        set(gen_name(GenKind::H, tr.j, tr.k), lift(kron(e11, rep.base[tr.j - 1]) + kron(e22, rep.base[tr.k - 1])));
        CMatrix bd = matmul(bj, di);
        CMatrix db = matmul(di, bj);
        set(gen_name(GenKind::Q, t, 1), kron(x, di));
        set(gen_name(GenKind::Q, t, 2), kron(x, bj));
        set(gen_name(GenKind::Q, t, 3), kron(e12, bd) + kron(e21, db));
        set(gen_name(GenKind::Q, t, 4), kron(e11, matmul(bd, bj)) + kron(e22, di));
        set(gen_name(GenKind::Q, t, 5), kron(e11, matmul(bj, ck)) + kron(e22, i1));
        set(gen_name(GenKind::Q, t, 6), kron(e11, bj) + kron(e22, ck));
    }
    set("J", -1.0 * CMatrix::identity(rep.dim));

    for (std::size_t g = 0; g < rep.images.size(); g++) {
        if (rep.images[g].empty()) {
            throw StructuralError("build_representation: no image for " + rep.gamma.generators[g].name);
        }
    }
    return rep;
}

double verify_representation(const Rep &rep, const Presentation &presentation) {
    std::vector<const CMatrix *> img(presentation.generators.size());
    for (std::size_t g = 0; g < img.size(); g++) {
        img[g] = &rep[presentation.generators[g].name];
        if (static_cast<int>(img[g]->rows()) != rep.dim) {
            throw StructuralError("verify_representation: image of " + presentation.generators[g].name +
                                  " has the wrong dimension");
        }
    }
    const CMatrix id = CMatrix::identity(rep.dim);
    const auto nrel = static_cast<long>(presentation.relations.size());
    std::vector<double> res(nrel, 0.0);
    detail::parallel_for(nrel, true, [&](long k) {
        const auto &rel = presentation.relations[k];
        CMatrix prod = *img[rel.word[0]];
        for (std::size_t w = 1; w < rel.word.size(); w++) {
            prod = matmul(prod, *img[rel.word[w]]);
        }
        res[k] = operator_norm(rel.rhs_j ? prod + id : prod - id);
    });
    return res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
}

KeyUnitaries key_unitaries(const Rep &rep) {
    KeyUnitaries k;
    k.O = rep.O_tilde;
    k.U = rep.U_tilde;
    const int r = rep.params.r;
    k.conj_residual = op_distance(matmul(matmul(k.U, k.O), k.U.adjoint()), matrix_power(k.O, r));

    const CMatrix o = matmul(rep["a1"], rep["a2"]);
    const CMatrix u = matmul(rep["a3"], rep["a4"]);
    const CMatrix u_inv = matmul(rep["a4"], rep["a3"]);
    k.lifted_residual = op_distance(matmul(matmul(u, o), u_inv), matrix_power(o, r));

    const CMatrix i4 = CMatrix::identity(4);
    k.factor_residual = op_distance(o, kron(i4, k.O)) + op_distance(u, kron(i4, k.U));
    return k;
}

}  // namespace lsself
