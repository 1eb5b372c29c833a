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

#ifndef LSSELF_TESTS_TEST_UTIL_H
#define LSSELF_TESTS_TEST_UTIL_H

#include <map>
#include <memory>
#include <random>
#include <string>

#include "lsself/linalg.h"
#include "lsself/representation.h"
#include "lsself/strategy.h"

namespace lsself::testing {

struct Fixture {
    PrimeParams params;
    FullTest test;
    Rep rep;
    Strategy ideal;
    Correlation corr;

    const CorrelationEntry &entry(const std::string &x, const std::string &y) const {
        const int xi = test.alice_at(x), yi = test.bob_at(y);
        for (const auto &e : corr.entries) {
            if (e.x == xi && e.y == yi) {
                return e;
            }
        }
        throw std::out_of_range("pair " + x + " / " + y + " is not in the support");
    }
};

/// Built once per d and shared by every test in the binary.
inline const Fixture &fixture(int d) {
    static std::map<int, std::unique_ptr<Fixture>> cache;
    auto &slot = cache[d];
    if (!slot) {
        slot = std::make_unique<Fixture>();
        slot->params = make_prime_params(d);
        slot->test = build_full_test(slot->params);
        slot->rep = build_representation(slot->params);
        slot->ideal = build_ideal_strategy(slot->test, slot->rep);
        slot->corr = generate_correlation(slot->ideal, slot->test);
    }
    return *slot;
}

inline CMatrix random_matrix(std::mt19937_64 &rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; i++) {
        for (std::size_t k = 0; k < cols; k++) {
            double re = g(rng);
            m(i, k) = cplx(re, g(rng));
        }
    }
    return m;
}

/// Random binary observable U diag(+-1) U^dagger, U = exp(iH) for a random
/// Hermitian H. Both eigenvalues occur whenever n >= 2.
inline CMatrix random_observable(std::mt19937_64 &rng, std::size_t n) {
    CMatrix a = random_matrix(rng, n, n);
    CMatrix h = 0.5 * (a + a.adjoint());
    CMatrix u = expm_i_hermitian(h, 1.0);
    CMatrix diag(n, n);
    std::bernoulli_distribution coin;
    bool any_plus = false, any_minus = false;
    for (std::size_t k = 0; k < n; k++) {
        bool plus = coin(rng);
        if (k + 1 == n && !any_minus) plus = false;
        if (k + 1 == n && !any_plus) plus = true;
        any_plus |= plus;
        any_minus |= !plus;
        diag(k, k) = plus ? 1.0 : -1.0;
    }
    return u * diag * u.adjoint();
}

}  // namespace lsself::testing

#endif
