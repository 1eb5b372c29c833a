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

#include "lsself/numtheory.h"

#include <cmath>
#include <numbers>
#include <string>

#include "lsself/errors.h"

namespace lsself {

namespace {

long mod_floor(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

std::complex<double> PrimeParams::omega(long k) const {
    long e = mod_floor(k, d);
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / d);
}

int PrimeParams::rpow(long e) const {
    return pow_table[mod_floor(e, d - 1)];
}

bool is_prime(long n) {
    if (n < 2) {
        return false;
    }
    for (long p = 2; p * p <= n; p++) {
        if (n % p == 0) {
            return false;
        }
    }
    return true;
}

long pow_mod(long base, long exp, long mod) {
    if (exp < 0) {
        throw DomainError("pow_mod: negative exponent");
    }
    long result = 1 % mod;
    long b = mod_floor(base, mod);
    while (exp > 0) {
        if (exp & 1) {
            result = result * b % mod;
        }
        b = b * b % mod;
        exp >>= 1;
    }
    return result;
}

long inverse_mod(long a, long mod) {
    long t = 0, new_t = 1;
    long r = mod, new_r = mod_floor(a, mod);
    while (new_r != 0) {
        long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) {
        throw DomainError("inverse_mod: " + std::to_string(a) + " is not invertible mod " + std::to_string(mod));
    }
    return mod_floor(t, mod);
}

int multiplicative_order(long a, long d) {
    long x = mod_floor(a, d);
    if (x == 0) {
        throw DomainError("multiplicative_order: element is zero mod d");
    }
    long v = x;
    int k = 1;
    while (v != 1) {
        v = v * x % d;
        k++;
        if (k > d) {
            throw DomainError("multiplicative_order: element not invertible");
        }
    }
    return k;
}

bool is_primitive_root(long r, long d) {
    if (d < 3 || !is_prime(d) || mod_floor(r, d) == 0) {
        return false;
    }
    return multiplicative_order(r, d) == d - 1;
}

int smallest_primitive_root(int d) {
    if (d < 3 || d % 2 == 0 || !is_prime(d)) {
        throw DomainError("smallest_primitive_root: d=" + std::to_string(d) + " is not an odd prime");
    }
    for (int r = 2; r < d; r++) {
        if (is_primitive_root(r, d)) {
            return r;
        }
    }
    throw DomainError("smallest_primitive_root: none found");  // unreachable for primes
}

PrimeParams make_prime_params(int d, std::optional<int> r, int max_d) {
    if (d < 3 || d % 2 == 0 || !is_prime(d)) {
        throw DomainError("d=" + std::to_string(d) + " is not an odd prime");
    }
    if (d > max_d) {
        throw DomainError("d=" + std::to_string(d) + " exceeds the allowed maximum " + std::to_string(max_d));
    }
    PrimeParams p;
    p.d = d;
    p.r = r.has_value() ? *r : smallest_primitive_root(d);
    if (p.r < 2 || p.r >= d || !is_primitive_root(p.r, d)) {
        throw DomainError("r=" + std::to_string(p.r) + " is not a primitive root of " + std::to_string(d));
    }
    p.log_table.assign(d, -1);
    p.pow_table.assign(d - 1, 0);
    long v = 1;
    for (int e = 0; e < d - 1; e++) {
        p.pow_table[e] = static_cast<int>(v);
        p.log_table[v] = e;
        v = v * p.r % d;
    }
    p.omega_d = std::polar(1.0, 2.0 * std::numbers::pi / d);
    p.omega_dm1 = std::polar(1.0, 2.0 * std::numbers::pi / (d - 1));
    return p;
}

int discrete_log(const PrimeParams &params, long j) {
    long x = mod_floor(j, params.d);
    if (x == 0) {
        throw DomainError("discrete_log: " + std::to_string(j) + " is 0 mod d, no logarithm");
    }
    return params.log_table[x];
}

}  // namespace lsself
