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

#include "lsself/linalg.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lsself/errors.h"

namespace lsself {

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

CMatrix CMatrix::column(const std::vector<cplx> &v) {
    CMatrix m(v.size(), 1);
    std::copy(v.begin(), v.end(), m.data());
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t j = 0; j < cols_; j++) {
            m(j, i) = std::conj((*this)(i, j));
        }
    }
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t j = 0; j < cols_; j++) {
            m(j, i) = (*this)(i, j);
        }
    }
    return m;
}

CMatrix CMatrix::conjugate() const {
    CMatrix m = *this;
    for (auto &x : m.data_) {
        x = std::conj(x);
    }
    return m;
}

cplx CMatrix::trace() const {
    cplx t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); i++) {
        t += (*this)(i, i);
    }
    return t;
}

CMatrix &CMatrix::operator+=(const CMatrix &o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw StructuralError("CMatrix +=: shape mismatch");
    }
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] += o.data_[k];
    }
    return *this;
}

CMatrix &CMatrix::operator-=(const CMatrix &o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw StructuralError("CMatrix -=: shape mismatch");
    }
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] -= o.data_[k];
    }
    return *this;
}

CMatrix &CMatrix::operator*=(cplx s) {
    for (auto &x : data_) {
        x *= s;
    }
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix &b) {
    a += b;
    return a;
}

CMatrix operator-(CMatrix a, const CMatrix &b) {
    a -= b;
    return a;
}

CMatrix operator*(cplx s, CMatrix a) {
    a *= s;
    return a;
}

CMatrix operator*(const CMatrix &a, const CMatrix &b) {
    return matmul(a, b);
}

namespace {

void check_product(const CMatrix &a, const CMatrix &b) {
    if (a.cols() != b.rows()) {
        throw StructuralError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                              std::to_string(b.rows()) + " differ");
    }
}

// Row i of c = row i of a times b. Shared by both kernels so that the
// accumulation order is identical.
inline void product_row(const CMatrix &a, const CMatrix &b, CMatrix &c, std::size_t i) {
    const std::size_t n = b.cols();
    cplx *ci = c.data() + i * n;
    for (std::size_t k = 0; k < a.cols(); k++) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0)) {
            continue;
        }
        const cplx *bk = b.data() + k * n;
        for (std::size_t j = 0; j < n; j++) {
            ci[j] += aik * bk[j];
        }
    }
}

constexpr std::size_t kParallelWork = 1 << 15;

}  // namespace

CMatrix matmul_serial(const CMatrix &a, const CMatrix &b) {
    check_product(a, b);
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); i++) {
        product_row(a, b, c, i);
    }
    return c;
}

CMatrix matmul_parallel(const CMatrix &a, const CMatrix &b) {
    check_product(a, b);
    CMatrix c(a.rows(), b.cols());
    const auto rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < rows; i++) {
        product_row(a, b, c, static_cast<std::size_t>(i));
    }
    return c;
}

CMatrix matmul(const CMatrix &a, const CMatrix &b) {
    if (a.rows() * a.cols() * b.cols() >= kParallelWork && !omp_in_parallel()) {
        return matmul_parallel(a, b);
    }
    return matmul_serial(a, b);
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    const std::size_t r = a.rows() * b.rows();
    const std::size_t c = a.cols() * b.cols();
    if (r != 0 && c > kMaxEntries / r) {
        throw ResourceError("kron: result exceeds the configured size cap");
    }
    CMatrix m(r, c);
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            const cplx x = a(i, j);
            if (x == cplx(0.0)) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); k++) {
                for (std::size_t l = 0; l < b.cols(); l++) {
                    m(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
                }
            }
        }
    }
    return m;
}

CMatrix kron(std::initializer_list<CMatrix> factors) {
    CMatrix out = CMatrix::identity(1);
    for (const auto &f : factors) {
        out = kron(out, f);
    }
    return out;
}

CMatrix matrix_power(const CMatrix &a, int k) {
    if (k < 0) {
        throw DomainError("matrix_power: negative exponent");
    }
    CMatrix result = CMatrix::identity(a.rows());
    CMatrix base = a;
    while (k > 0) {
        if (k & 1) {
            result = matmul(result, base);
        }
        k >>= 1;
        if (k > 0) {
            base = matmul(base, base);
        }
    }
    return result;
}

cplx frobenius_inner(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw StructuralError("frobenius_inner: shape mismatch");
    }
    cplx s = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        s += std::conj(a.data()[k]) * b.data()[k];
    }
    return s;
}

double frobenius_norm(const CMatrix &a) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        s += std::norm(a.data()[k]);
    }
    return std::sqrt(s);
}

double max_abs(const CMatrix &a) {
    double m = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        m = std::max(m, std::abs(a.data()[k]));
    }
    return m;
}

double operator_norm(const CMatrix &a) {
    if (a.size() == 0) {
        return 0.0;
    }
    const double fro = frobenius_norm(a);
    if (fro == 0.0) {
        return 0.0;
    }
    // Scale first so that tiny residuals do not underflow in a^dagger a.
    CMatrix s = (1.0 / fro) * a;
    CMatrix sh = s.adjoint();
    // Deterministic, irregular start vector.
    CMatrix v(a.cols(), 1);
    for (std::size_t k = 0; k < a.cols(); k++) {
        v(k, 0) = cplx(1.0 + 0.37 * std::sin(1.7 * k + 0.3), 0.21 * std::cos(2.3 * k + 0.1));
    }
    v *= 1.0 / frobenius_norm(v);
    double lambda = 0.0;
    for (int it = 0; it < 1000; it++) {
        CMatrix w = matmul_serial(sh, matmul_serial(s, v));
        double next = frobenius_norm(w);
        if (next == 0.0) {
            break;
        }
        w *= 1.0 / next;
        v = std::move(w);
        bool done = std::abs(next - lambda) <= 1e-13 * next;
        lambda = next;
        if (done) {
            break;
        }
    }
    return std::sqrt(lambda) * fro;
}

double op_distance(const CMatrix &a, const CMatrix &b) {
    return operator_norm(a - b);
}

bool is_hermitian(const CMatrix &a, double tol) {
    return a.rows() == a.cols() && operator_norm(a - a.adjoint()) <= tol;
}

bool is_unitary(const CMatrix &a, double tol) {
    return a.rows() == a.cols() && operator_norm(matmul(a.adjoint(), a) - CMatrix::identity(a.rows())) <= tol;
}

bool is_projector(const CMatrix &a, double tol) {
    return is_hermitian(a, tol) && operator_norm(matmul(a, a) - a) <= tol;
}

double involution_residual(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        throw StructuralError("involution_residual: matrix is not square");
    }
    return operator_norm(matmul(m, m) - CMatrix::identity(m.rows())) + operator_norm(m - m.adjoint());
}

CMatrix qft(int n) {
    if (n < 1) {
        throw DomainError("qft: dimension must be >= 1");
    }
    CMatrix f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; j++) {
        for (int k = 0; k < n; k++) {
            long e = static_cast<long>(j) * k % n;
            f(j, k) = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(e) / n);
        }
    }
    return f;
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m(0, 1) = cplx(0, -1);
    m(1, 0) = cplx(0, 1);
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

namespace {

// Upper bound on ||a||_op that is exact whenever it exceeds tol. The
// Frobenius norm settles the common near-zero case without iterating.
double op_norm_above(const CMatrix &a, double tol) {
    const double fro = frobenius_norm(a);
    return fro <= tol ? fro : operator_norm(a);
}

}  // namespace

ProjectorFamily observable_to_projectors(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        throw StructuralError("observable_to_projectors: matrix is not square");
    }
    const double res = op_norm_above(matmul(m, m) - CMatrix::identity(m.rows()), tol) +
                       op_norm_above(m - m.adjoint(), tol);
    if (res > tol) {
        throw PreconditionError("observable_to_projectors: not a Hermitian involution", res);
    }
    CMatrix id = CMatrix::identity(m.rows());
    return {0.5 * (id + m), 0.5 * (id - m)};
}

CMatrix projectors_to_observable(const ProjectorFamily &f) {
    if (f.size() != 2) {
        throw StructuralError("projectors_to_observable: family must have two outcomes");
    }
    return f[0] - f[1];
}

namespace {

double max_commutator(const std::vector<CMatrix> &observables, double tol) {
    double worst = 0.0;
    for (std::size_t i = 0; i < observables.size(); i++) {
        for (std::size_t j = i + 1; j < observables.size(); j++) {
            const auto &a = observables[i];
            const auto &b = observables[j];
            worst = std::max(worst, op_norm_above(matmul(a, b) - matmul(b, a), tol));
        }
    }
    return worst;
}

CMatrix joint_product(const std::vector<CMatrix> &observables, const std::vector<int> &outcome) {
    const std::size_t n = observables[0].rows();
    CMatrix id = CMatrix::identity(n);
    CMatrix p = id;
    for (std::size_t s = 0; s < observables.size(); s++) {
        double sign = (outcome[s] & 1) ? -1.0 : 1.0;
        p = matmul(p, 0.5 * (id + sign * observables[s]));
    }
    return p;
}

}  // namespace

CMatrix joint_projector(const std::vector<CMatrix> &observables, const std::vector<int> &outcome, double tol) {
    if (observables.empty() || observables.size() != outcome.size()) {
        throw StructuralError("joint_projector: observables and outcome differ in length");
    }
    const double worst = max_commutator(observables, tol);
    if (worst > tol) {
        throw PreconditionError("joint_projector: observables do not commute", worst);
    }
    return joint_product(observables, outcome);
}

ProjectorFamily joint_family(const std::vector<CMatrix> &observables, double tol) {
    if (observables.empty() || observables.size() > 16) {
        throw StructuralError("joint_family: need between 1 and 16 observables");
    }
    const double worst = max_commutator(observables, tol);
    if (worst > tol) {
        throw PreconditionError("joint_family: observables do not commute", worst);
    }
    const std::size_t k = observables.size();
    ProjectorFamily f;
    std::vector<int> outcome(k);
    for (std::size_t a = 0; a < (std::size_t{1} << k); a++) {
        for (std::size_t s = 0; s < k; s++) {
            outcome[s] = static_cast<int>((a >> s) & 1);
        }
        f.push_back(joint_product(observables, outcome));
    }
    return f;
}

double completeness_residual(const ProjectorFamily &f) {
    if (f.empty()) {
        throw StructuralError("completeness_residual: empty family");
    }
    CMatrix sum = CMatrix::zeros(f[0].rows(), f[0].cols());
    for (const auto &p : f) {
        sum += p;
    }
    return frobenius_norm(sum - CMatrix::identity(f[0].rows()));
}

double orthogonality_residual(const ProjectorFamily &f) {
    double worst = 0.0;
    for (std::size_t a = 0; a < f.size(); a++) {
        worst = std::max(worst, frobenius_norm(matmul(f[a], f[a]) - f[a]));
        for (std::size_t b = 0; b < f.size(); b++) {
            if (a != b) {
                worst = std::max(worst, frobenius_norm(matmul(f[a], f[b])));
            }
        }
    }
    return worst;
}

CMatrix expm_i_hermitian(const CMatrix &h, double t) {
    if (h.rows() != h.cols()) {
        throw StructuralError("expm_i_hermitian: matrix is not square");
    }
    CMatrix a = cplx(0.0, t) * h;
    double norm = frobenius_norm(a);
    int squarings = 0;
    while (norm > 0.5) {
        norm *= 0.5;
        squarings++;
    }
    a *= std::ldexp(1.0, -squarings);
    const std::size_t n = h.rows();
    CMatrix result = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k <= 24; k++) {
        term = matmul(term, a);
        term *= 1.0 / k;
        result += term;
    }
    for (int s = 0; s < squarings; s++) {
        result = matmul(result, result);
    }
    return result;
}

}  // namespace lsself
