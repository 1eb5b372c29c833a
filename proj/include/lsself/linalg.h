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

#ifndef LSSELF_LINALG_H
#define LSSELF_LINALG_H

#include <complex>
#include <cstddef>
#include <vector>

namespace lsself {

using cplx = std::complex<double>;

/// Default verification tolerance.
inline constexpr double kTolerance = 1e-9;

/// Cap on rows*cols of any matrix built by kron.
inline constexpr std::size_t kMaxEntries = std::size_t{1} << 26;

/// Dense complex matrix, row-major.
class CMatrix {
   public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);

    static CMatrix identity(std::size_t n);
    static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
    /// Column vector from amplitudes.
    static CMatrix column(const std::vector<cplx> &v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    cplx &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    cplx *data() { return data_.data(); }
    const cplx *data() const { return data_.data(); }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;
    cplx trace() const;

    CMatrix &operator+=(const CMatrix &o);
    CMatrix &operator-=(const CMatrix &o);
    CMatrix &operator*=(cplx s);

    bool operator==(const CMatrix &o) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix &b);
CMatrix operator-(CMatrix a, const CMatrix &b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(const CMatrix &a, const CMatrix &b);

/// Reference product. Loop order i-k-j.
CMatrix matmul_serial(const CMatrix &a, const CMatrix &b);
/// OpenMP product over output rows. Each entry is accumulated in the same
/// order as matmul_serial, so results are bit-identical.
CMatrix matmul_parallel(const CMatrix &a, const CMatrix &b);
/// Picks the parallel kernel for large products outside parallel regions.
CMatrix matmul(const CMatrix &a, const CMatrix &b);

CMatrix kron(const CMatrix &a, const CMatrix &b);
CMatrix kron(std::initializer_list<CMatrix> factors);
CMatrix matrix_power(const CMatrix &a, int k);

/// sum conj(a_ij) b_ij
cplx frobenius_inner(const CMatrix &a, const CMatrix &b);
double frobenius_norm(const CMatrix &a);
double max_abs(const CMatrix &a);
/// Largest singular value by power iteration on a^dagger a.
double operator_norm(const CMatrix &a);
/// ||a - b||_op
double op_distance(const CMatrix &a, const CMatrix &b);

bool is_hermitian(const CMatrix &a, double tol = kTolerance);
bool is_unitary(const CMatrix &a, double tol = kTolerance);
bool is_projector(const CMatrix &a, double tol = kTolerance);
/// ||M^2 - I||_op + ||M - M^dagger||_op
double involution_residual(const CMatrix &m);

/// (QFT_n)_{jk} = exp(2 pi i jk / n) / sqrt(n).
CMatrix qft(int n);

/// Standard Pauli matrices.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

using ProjectorFamily = std::vector<CMatrix>;

/// (I + M)/2, (I - M)/2. Throws PreconditionError if M is not a Hermitian
/// involution within tol.
ProjectorFamily observable_to_projectors(const CMatrix &m, double tol = kTolerance);
/// P^0 - P^1 of a two-outcome family.
CMatrix projectors_to_observable(const ProjectorFamily &f);

/// prod_s (I + (-1)^{a_s} M_s)/2. Throws PreconditionError carrying the max
/// commutator norm if the observables do not pairwise commute.
CMatrix joint_projector(const std::vector<CMatrix> &observables, const std::vector<int> &outcome,
                        double tol = kTolerance);

/// All 2^k joint projectors of k commuting observables; bit s of the index
/// is the outcome of observable s. Commutation is checked once.
ProjectorFamily joint_family(const std::vector<CMatrix> &observables, double tol = kTolerance);
/// ||sum P - I||_F. The Frobenius norm bounds the operator norm from above
/// and avoids slow power iterations on noise-level matrices.
double completeness_residual(const ProjectorFamily &f);
/// max over a != b of ||P_a P_b||_F, and over a of ||P_a^2 - P_a||_F.
double orthogonality_residual(const ProjectorFamily &f);

/// exp(i t H) for Hermitian H by scaling and squaring of the Taylor series.
CMatrix expm_i_hermitian(const CMatrix &h, double t);

}  // namespace lsself

#endif
