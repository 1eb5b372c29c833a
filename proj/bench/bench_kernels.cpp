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

// Serial reference kernels against their OpenMP counterparts.

#include <map>
#include <random>

#include "benchmark/benchmark.h"

#include "lsself/linalg.h"
#include "lsself/representation.h"
#include "lsself/strategy.h"

using namespace lsself;

static CMatrix random_square(std::size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    CMatrix m(n, n);
    for (std::size_t k = 0; k < m.size(); k++) {
        double re = g(rng);
        m.data()[k] = cplx(re, g(rng));
    }
    return m;
}

static void BM_matmul_serial(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    CMatrix a = random_square(n, 1), b = random_square(n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matmul_serial(a, b));
    }
    state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_matmul_serial)->Arg(48)->Arg(96)->Arg(192)->Unit(benchmark::kMicrosecond);

static void BM_matmul_parallel(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    CMatrix a = random_square(n, 1), b = random_square(n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matmul_parallel(a, b));
    }
    state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_matmul_parallel)->Arg(48)->Arg(96)->Arg(192)->Unit(benchmark::kMicrosecond);

namespace {

struct Setup {
    FullTest test;
    Strategy ideal;
};

const Setup &setup(int d) {
    static std::map<int, Setup> cache;
    auto it = cache.find(d);
    if (it == cache.end()) {
        auto params = make_prime_params(d);
        Setup s;
        s.test = build_full_test(params);
        s.ideal = build_ideal_strategy(s.test, build_representation(params));
        it = cache.emplace(d, std::move(s)).first;
    }
    return it->second;
}

}  // namespace

static void BM_correlation(benchmark::State &state) {
    const auto &s = setup(static_cast<int>(state.range(0)));
    const Exec exec = state.range(1) ? Exec::Parallel : Exec::Serial;
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_correlation(s.ideal, s.test, exec));
    }
    state.SetLabel(state.range(1) ? "parallel" : "serial");
}
BENCHMARK(BM_correlation)
    ->ArgsProduct({{5, 13}, {0, 1}})
    ->ArgNames({"d", "par"})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
