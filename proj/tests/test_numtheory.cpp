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
#include <set>

#include "gtest/gtest.h"

#include "lsself/errors.h"

using namespace lsself;

static bool naive_prime(long n) {
    if (n < 2) return false;
    for (long k = 2; k < n; k++) {
        if (n % k == 0) return false;
    }
    return true;
}

// r is a primitive root iff its powers hit every nonzero residue.
static bool naive_primitive(int r, int d) {
    std::set<int> seen;
    long v = 1;
    for (int e = 0; e < d - 1; e++) {
        seen.insert(static_cast<int>(v));
        v = v * r % d;
    }
    return static_cast<int>(seen.size()) == d - 1;
}

TEST(numtheory, is_prime_matches_trial_division) {
    for (long n = -3; n < 400; n++) {
        ASSERT_EQ(is_prime(n), naive_prime(n)) << n;
    }
}

TEST(numtheory, pow_and_inverse) {
    EXPECT_EQ(pow_mod(3, 0, 7), 1);
    EXPECT_EQ(pow_mod(3, 5, 7), 5);
    EXPECT_EQ(pow_mod(-2, 3, 11), 3);
    EXPECT_THROW(pow_mod(2, -1, 7), DomainError);
    for (int d : {3, 5, 7, 11, 13, 31}) {
        for (int a = 1; a < d; a++) {
            EXPECT_EQ(a * inverse_mod(a, d) % d, 1);
        }
    }
    EXPECT_THROW(inverse_mod(6, 9), DomainError);
}

TEST(numtheory, primitive_roots_agree_with_enumeration) {
    for (int d = 3; d <= 31; d += 2) {
        if (!naive_prime(d)) continue;
        int smallest = -1;
        for (int r = 1; r < d; r++) {
            bool expect = r > 1 && naive_primitive(r, d);
            ASSERT_EQ(is_primitive_root(r, d), expect) << r << " mod " << d;
            if (expect && smallest < 0) smallest = r;
        }
        EXPECT_EQ(smallest_primitive_root(d), smallest);
    }
    EXPECT_EQ(smallest_primitive_root(3), 2);
    EXPECT_EQ(smallest_primitive_root(7), 3);
    EXPECT_EQ(smallest_primitive_root(13), 2);
}

TEST(numtheory, order_of_elements) {
    EXPECT_EQ(multiplicative_order(2, 7), 3);
    EXPECT_EQ(multiplicative_order(6, 7), 2);
    EXPECT_EQ(multiplicative_order(3, 7), 6);
    EXPECT_THROW(multiplicative_order(7, 7), DomainError);
}

TEST(numtheory, params_reject_bad_input) {
    EXPECT_THROW(make_prime_params(2), DomainError);
    EXPECT_THROW(make_prime_params(9), DomainError);
    EXPECT_THROW(make_prime_params(1), DomainError);
    EXPECT_THROW(make_prime_params(37), DomainError);
    EXPECT_THROW(make_prime_params(7, 2), DomainError);  // 2 has order 3 mod 7
    EXPECT_THROW(make_prime_params(5, 1), DomainError);
    EXPECT_NO_THROW(make_prime_params(37, std::nullopt, 41));
    EXPECT_EQ(make_prime_params(7, 5).r, 5);  // non-minimal roots are allowed
}

TEST(numtheory, log_and_power_tables_are_inverse) {
    for (int d : {3, 5, 7, 11, 13}) {
        auto p = make_prime_params(d);
        EXPECT_EQ(p.log_table[0], -1);
        for (int j = 1; j < d; j++) {
            EXPECT_EQ(p.rpow(p.log_table[j]), j);
            EXPECT_EQ(pow_mod(p.r, discrete_log(p, j), d), j);
            EXPECT_EQ(discrete_log(p, j + 3 * d), discrete_log(p, j));
        }
        for (int e = -2 * d; e < 2 * d; e++) {
            EXPECT_EQ(p.rpow(e), pow_mod(p.r, ((e % (d - 1)) + (d - 1)) % (d - 1), d));
        }
        EXPECT_THROW(discrete_log(p, 0), DomainError);
        EXPECT_THROW(discrete_log(p, d), DomainError);
    }
}

TEST(numtheory, roots_of_unity) {
    auto p = make_prime_params(5);
    for (int k = -7; k < 12; k++) {
        const double angle = 2 * std::numbers::pi * k / 5;
        EXPECT_NEAR(std::abs(p.omega(k) - std::complex<double>(std::cos(angle), std::sin(angle))), 0.0, 1e-14);
    }
    EXPECT_NEAR(std::abs(std::pow(p.omega_dm1, 4) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(p.omega_d - p.omega(1)), 0.0, 1e-15);
}
