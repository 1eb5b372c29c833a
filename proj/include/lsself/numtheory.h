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

#ifndef LSSELF_NUMTHEORY_H
#define LSSELF_NUMTHEORY_H

#include <complex>
#include <optional>
#include <vector>

namespace lsself {

/// Largest prime accepted by default. The test dimension grows like 4(d-1)
/// per party and the robustness envelope like r^d, so keep this small.
inline constexpr int kDefaultMaxPrime = 31;

/// Number-theoretic context: an odd prime d with a primitive root r.
struct PrimeParams {
    int d = 0;
    int r = 0;
    /// log_table[j] = log_r(j) for j in 1..d-1. Entry 0 is -1.
    std::vector<int> log_table;
    /// pow_table[e] = r^e mod d for e in 0..d-2.
    std::vector<int> pow_table;
    std::complex<double> omega_d;
    std::complex<double> omega_dm1;

    /// omega_d^k, with k reduced mod d before taking the angle.
    std::complex<double> omega(long k) const;
    /// r^e mod d for any integer e (reduced mod d-1).
    int rpow(long e) const;
};

bool is_prime(long n);
long pow_mod(long base, long exp, long mod);
long inverse_mod(long a, long mod);
/// Order of a in (Z/d)^x. Requires gcd(a, d) = 1.
int multiplicative_order(long a, long d);
bool is_primitive_root(long r, long d);

/// Least r >= 2 generating (Z/d)^x. Throws DomainError unless d is an odd prime.
int smallest_primitive_root(int d);

/// Builds the context for (d, r). If r is omitted the smallest primitive root
/// is used. Throws DomainError if d is not an odd prime <= max_d or r is not
/// a primitive root of d.
PrimeParams make_prime_params(int d, std::optional<int> r = std::nullopt, int max_d = kDefaultMaxPrime);

/// e in 0..d-2 with r^e = j (mod d). Throws DomainError if j = 0 (mod d).
int discrete_log(const PrimeParams &params, long j);

}  // namespace lsself

#endif
