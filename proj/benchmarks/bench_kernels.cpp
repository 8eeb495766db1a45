// SPDX-License-Identifier: Apache-2.0
//
// masec: movable-antenna secure transmission toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "masec/apga.hpp"
#include "masec/incomplete_gamma.hpp"
#include "masec/zero_forcing.hpp"

using namespace masec;

namespace
{
    const LinearFitTable &table()
    {
        static const LinearFitTable t = fit_linear_surrogate();
        return t;
    }

    SystemConfig scenario(int n, int m)
    {
        auto cfg = default_preset();
        cfg.n_antennas = n;
        cfg.n_eves = m;
        cfg.thetas.clear();
        for (int i = 0; i < m; ++i)
            cfg.thetas.push_back((1.1 + 0.15 * i) * pi / 4.0);
        cfg.betas.assign(m, 1.0);
        cfg.ks.assign(m, 4.0);
        cfg.span = 0.5 * (n - 1) + 1.0;
        return cfg;
    }
}

static void BM_RegularizedGamma(benchmark::State &state)
{
    double t = 0.1;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(regularized_lower_gamma(12.5, t));
        t = t < 40.0 ? t + 0.37 : 0.1;
    }
}
BENCHMARK(BM_RegularizedGamma);

static void BM_InverseGamma(benchmark::State &state)
{
    double eps = 0.01;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(inverse_lower_incomplete_gamma(eps, 12.5));
        eps = eps < 0.98 ? eps + 0.013 : 0.01;
    }
}
BENCHMARK(BM_InverseGamma);

static void BM_Objective(benchmark::State &state)
{
    const auto cfg = scenario(static_cast<int>(state.range(0)), 3);
    const RealVec x = feasible_region(cfg).midpoints();
    const CplxVec w = mrt_beamformer(x, cfg).values();
    const auto c = surrogate_lookup(table(), 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(f3(w, x, c, cfg));
}
BENCHMARK(BM_Objective)->Arg(5)->Arg(16)->Arg(64);

static void BM_BeamformerGradient(benchmark::State &state)
{
    const auto cfg = scenario(static_cast<int>(state.range(0)), 3);
    const RealVec x = feasible_region(cfg).midpoints();
    const CplxVec w = mrt_beamformer(x, cfg).values();
    const auto c = surrogate_lookup(table(), 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(grad_w_f3(w, x, c, cfg));
}
BENCHMARK(BM_BeamformerGradient)->Arg(5)->Arg(16)->Arg(64);

static void BM_PositionGradient(benchmark::State &state)
{
    const auto cfg = scenario(static_cast<int>(state.range(0)), 3);
    const RealVec x = feasible_region(cfg).midpoints();
    const CplxVec w = mrt_beamformer(x, cfg).values();
    const auto c = surrogate_lookup(table(), 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(grad_x_f3(w, x, c, cfg));
}
BENCHMARK(BM_PositionGradient)->Arg(5)->Arg(16)->Arg(64);

static void BM_NullSteeringGradient(benchmark::State &state)
{
    const auto cfg = scenario(static_cast<int>(state.range(0)), 2);
    const RealVec x = feasible_region(cfg).midpoints();
    for (auto _ : state)
        benchmark::DoNotOptimize(grad_theta(x, cfg));
}
BENCHMARK(BM_NullSteeringGradient)->Arg(5)->Arg(16)->Arg(64);

static void BM_AlternatingAscent(benchmark::State &state)
{
    const auto cfg = default_preset();
    const RealVec x0 = feasible_region(cfg).midpoints();
    const auto w0 = mrt_beamformer(x0, cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(apga_solve(w0, x0, 0.5, table(), cfg, {}));
}
BENCHMARK(BM_AlternatingAscent)->Unit(benchmark::kMillisecond);

static void BM_NullSteeringDescent(benchmark::State &state)
{
    const auto cfg = scenario(5, 2);
    const RealVec x0 = feasible_region(cfg).midpoints();
    for (auto _ : state)
        benchmark::DoNotOptimize(pgd_solve(x0, cfg, {}));
}
BENCHMARK(BM_NullSteeringDescent)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
