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

#ifndef LSSELF_REPRESENTATION_H
#define LSSELF_REPRESENTATION_H

#include <string>
#include <vector>

#include "lsself/groups.h"
#include "lsself/linalg.h"
#include "lsself/numtheory.h"

namespace lsself {

/// The representation of Gamma on W2 (x) W2 (x) W_{d-1}. The first W2 factor
/// carries the p/q/f/g/m structure, the second the b/c/d/h structure.
/// W_{d-1} has basis |x_1>..|x_{d-1}>, stored at indices 0..d-2.
struct Rep {
    PrimeParams params;
    Presentation gamma;
    int dim = 0;
    /// Aligned with gamma.generators; the image of J is -I.
    std::vector<CMatrix> images;
    /// Images of a_1..a_{r+5} on W_{d-1} (index 0 is a_1).
    std::vector<CMatrix> base;
    CMatrix O_tilde;
    CMatrix U_tilde;

    /// Throws StructuralError naming the generator if it is absent.
    const CMatrix &operator[](const std::string &name) const;
    CMatrix &operator[](const std::string &name);
};

/// |u_k> = sum_j omega_{d-1}^{jk} |x_{r^j}> / sqrt(d-1) as a column.
CMatrix u_basis_vector(const PrimeParams &params, int k);

Rep build_representation(const PrimeParams &params);

/// Max over relations of ||prod Psi(s) - (-1)^{rhs} I||_op, covering
/// order-two, linear, J-linear, conjugacy and J-central relations.
double verify_representation(const Rep &rep, const Presentation &presentation);

struct KeyUnitaries {
    CMatrix O;
    CMatrix U;
    /// ||U O U^dagger - O^r||_op on W_{d-1}.
    double conj_residual = 0.0;
    /// Same relation on the full space through Psi(a3 a4) and Psi(a1 a2).
    double lifted_residual = 0.0;
    /// ||Psi(a1)Psi(a2) - I(x)I(x)O|| + ||Psi(a3)Psi(a4) - I(x)I(x)U||.
    double factor_residual = 0.0;
};

KeyUnitaries key_unitaries(const Rep &rep);

}  // namespace lsself

#endif
