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

#include <random>
#include <sstream>

#include "doctest.h"
#include "masec/apga.hpp"
#include "masec/outage.hpp"
#include "oracles.hpp"

using namespace masec;

namespace
{
    const LinearFitTable &table()
    {
        static const LinearFitTable t = fit_linear_surrogate();
        return t;
    }

    SystemConfig three_eves()
    {
        auto cfg = default_preset();
        cfg.n_eves = 3;
        cfg.thetas = {0.9, 1.2, 0.3};
        cfg.betas = {1.0, 0.6, 1.4};
        cfg.ks = {2.0, 5.0, 1.0};
        return cfg;
    }

    struct Instance
    {
        CplxVec w;
        RealVec x;
        SurrogateCoefficients c;
    };

    Instance random_instance(std::mt19937_64 &rng, const SystemConfig &cfg)
    {
        const double eps = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
        return {oracle::random_unit(rng, cfg.n_antennas), oracle::random_feasible(rng, cfg),
                surrogate_lookup(table(), eps)};
    }
}

TEST_SUITE("objective")
{
    TEST_CASE("matches the ratio form on random instances and shares its sign")
    {
        std::mt19937_64 rng(1);
        const auto cfg = three_eves();
        for (int trial = 0; trial < 100; ++trial)
        {
            const auto in = random_instance(rng, cfg);
            const double got = f3(in.w, in.x, in.c, cfg);
            const double ref = oracle::f3(in.w, in.x, in.c.kappa, in.c.rho, cfg);
            CHECK(got == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
            const auto cf = oracle::closed_form(in.w, in.x, cfg);
            CHECK((got > 0) == (cf.f2 - in.c.kappa * cf.f1 - in.c.rho > 0));
        }
    }

    TEST_CASE("Rayleigh reduction")
    {
        auto cfg = three_eves();
        cfg.ks = {0.0, 0.0, 0.0};
        std::mt19937_64 rng(2);
        const auto in = random_instance(rng, cfg);
        const double b = cfg.beta0 * std::norm(oracle::inner(oracle::steering(in.x, cfg.theta0, 1.0), in.w));
        const double sb = 3.0, sb2 = 1.0 + 0.36 + 1.96;
        const double T = cfg.sigma2 / cfg.pa * (cfg.pa * b / (cfg.sigma2 * 8.0) + 1.0 / 8.0 - 1.0);
        CHECK(f3(in.w, in.x, in.c, cfg) ==
              doctest::Approx(sb * T - in.c.kappa * sb * sb - in.c.rho * sb2).epsilon(1e-12));
    }

    TEST_CASE("table overload uses the interpolated coefficients")
    {
        const auto cfg = default_preset();
        const RealVec x = feasible_region(cfg).midpoints();
        const CplxVec w = mrt_beamformer(x, cfg).values();
        CHECK(f3(w, x, 0.375, table(), cfg) == f3(w, x, surrogate_lookup(table(), 0.375), cfg));
    }
}

TEST_SUITE("gradients")
{
    TEST_CASE("beamformer gradient matches finite differences")
    {
        std::mt19937_64 rng(10);
        const auto cfg = three_eves();
        for (int trial = 0; trial < 50; ++trial)
        {
            const auto in = random_instance(rng, cfg);
            const auto fd = oracle::wirtinger_diff(
                [&](const CplxVec &w) { return oracle::f3(w, in.x, in.c.kappa, in.c.rho, cfg); }, in.w);
            CHECK(oracle::relative_error_vec(grad_w_f3(in.w, in.x, in.c, cfg), fd) <= 1e-5);
        }
    }

    TEST_CASE("position gradient matches finite differences")
    {
        std::mt19937_64 rng(11);
        const auto cfg = three_eves();
        for (int trial = 0; trial < 50; ++trial)
        {
            const auto in = random_instance(rng, cfg);
            const auto fd = oracle::central_diff(
                [&](const RealVec &x) { return oracle::f3(in.w, x, in.c.kappa, in.c.rho, cfg); }, in.x);
            CHECK(oracle::relative_error_vec(grad_x_f3(in.w, in.x, in.c, cfg), fd) <= 1e-5);
        }
    }

    TEST_CASE("single-direction gain gradient matches the chain rule")
    {
        std::mt19937_64 rng(12);
        const auto cfg = three_eves();
        const auto in = random_instance(rng, cfg);
        const GradientWorkspace ws(in.w, in.x, cfg);
        for (std::size_t d = 0; d < 4; ++d)
        {
            const double theta = d == 0 ? cfg.theta0 : cfg.thetas[d - 1];
            const auto fd = oracle::central_diff(
                [&](const RealVec &x) { return std::norm(oracle::inner(oracle::steering(x, theta, 1.0), in.w)); }, in.x);
            CHECK(oracle::relative_error_vec(ws.gain_gradient(d), fd) <= 1e-6);
        }
    }

    TEST_CASE("workspace structure")
    {
        std::mt19937_64 rng(13);
        const auto cfg = three_eves();
        const auto in = random_instance(rng, cfg);
        const GradientWorkspace ws(in.w, in.x, cfg);
        CHECK((ws.C - ws.C.transpose()).norm() == 0.0);
        CHECK((ws.D + ws.D.transpose()).norm() == 0.0);
        const double bound = 2.0 * oracle::pi / cfg.wavelength;
        for (std::size_t d = 0; d < ws.w_diag.size(); ++d)
        {
            const double s = std::abs(std::sin(d == 0 ? cfg.theta0 : cfg.thetas[d - 1]));
            CHECK(ws.w_diag[d].cwiseAbs().maxCoeff() <= bound * s + 1e-12);
            CHECK(ws.s_diag[d].cwiseAbs().maxCoeff() <= bound * s + 1e-12);
        }
    }

    TEST_CASE("broadside geometry has no position gradient")
    {
        auto cfg = three_eves();
        cfg.theta0 = 0.0;
        cfg.n_eves = 1;
        cfg.thetas = {0.0};
        cfg.betas = {1.0};
        cfg.ks = {3.0};
        std::mt19937_64 rng(14);
        const auto in = random_instance(rng, cfg);
        CHECK(grad_x_f3(in.w, in.x, in.c, cfg).norm() == 0.0);
    }

    TEST_CASE("eavesdropper order does not matter")
    {
        std::mt19937_64 rng(15);
        const auto cfg = three_eves();
        auto perm = cfg;
        perm.thetas = {cfg.thetas[2], cfg.thetas[0], cfg.thetas[1]};
        perm.betas = {cfg.betas[2], cfg.betas[0], cfg.betas[1]};
        perm.ks = {cfg.ks[2], cfg.ks[0], cfg.ks[1]};
        const auto in = random_instance(rng, cfg);
        CHECK(oracle::relative_error_vec(grad_w_f3(in.w, in.x, in.c, perm), grad_w_f3(in.w, in.x, in.c, cfg)) <= 1e-13);
        CHECK(oracle::relative_error_vec(grad_x_f3(in.w, in.x, in.c, perm), grad_x_f3(in.w, in.x, in.c, cfg)) <= 1e-13);
    }

    TEST_CASE("path-gain scaling agrees with finite differences of the scaled problem")
    {
        std::mt19937_64 rng(16);
        auto cfg = three_eves();
        for (auto &b : cfg.betas)
            b *= 2.5;
        const auto in = random_instance(rng, cfg);
        const auto fd = oracle::wirtinger_diff(
            [&](const CplxVec &w) { return oracle::f3(w, in.x, in.c.kappa, in.c.rho, cfg); }, in.w);
        CHECK(oracle::relative_error_vec(grad_w_f3(in.w, in.x, in.c, cfg), fd) <= 1e-5);
    }

    TEST_CASE("MRT-tied objective and its gradient")
    {
        std::mt19937_64 rng(17);
        const auto cfg = three_eves();
        for (int trial = 0; trial < 20; ++trial)
        {
            const auto in = random_instance(rng, cfg);
            const CplxVec mrt = mrt_beamformer(in.x, cfg).values();
            CHECK(f3_mrt(in.x, in.c, cfg) == doctest::Approx(f3(mrt, in.x, in.c, cfg)).epsilon(1e-11));
            const auto fd = oracle::central_diff(
                [&](const RealVec &x) {
                    return oracle::f3(mrt_beamformer(x, cfg).values(), x, in.c.kappa, in.c.rho, cfg);
                },
                in.x);
            CHECK(oracle::relative_error_vec(grad_x_f3_mrt(in.x, in.c, cfg), fd) <= 1e-5);
        }
    }
}

TEST_SUITE("ascent")
{
    TEST_CASE("parameter validation")
    {
        OptimizerParams p;
        CHECK_NOTHROW(p.validate());
        p.chi = 1.0;
        CHECK_THROWS_AS(p.validate(), ConfigError);
        p = {};
        p.delta0 = 0.0;
        CHECK_THROWS_AS(p.validate(), ConfigError);
        p = {};
        p.tau = 0.0;
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }

    TEST_CASE("trace is nondecreasing, every accepted step beats its model and iterates stay feasible")
    {
        const auto cfg = default_preset();
        const auto region = feasible_region(cfg);
        const RealVec x0 = region.midpoints();
        std::vector<ApgaTraceEntry> trace;
        const auto r = apga_solve(mrt_beamformer(x0, cfg), x0, 0.52, table(), cfg, {}, UpdateBlocks::joint, &trace);
        REQUIRE(!trace.empty());
        double prev = f3(mrt_beamformer(x0, cfg).values(), x0, 0.52, table(), cfg);
        for (const auto &e : trace)
        {
            CHECK(e.f3 >= prev);
            if (e.accepted)
                CHECK(e.f3 >= e.model);
            prev = e.f3;
        }
        CHECK(std::abs(r.w.values().norm() - 1.0) <= 1e-12);
        CHECK(region.contains(r.x));
        CHECK(r.f3 == doctest::Approx(f3(r.w.values(), r.x, 0.52, table(), cfg)).epsilon(1e-12));

        std::ostringstream os;
        write_trace(os, trace);
        CHECK(os.str().rfind("iteration,block,delta,f3,model,accepted\n", 0) == 0);
    }

    TEST_CASE("stationary value decreases with the confidence level")
    {
        const auto cfg = default_preset();
        const RealVec x0 = feasible_region(cfg).midpoints();
        double prev = INFINITY;
        for (double eps : {0.51, 0.52, 0.53})
        {
            const auto r = apga_solve(mrt_beamformer(x0, cfg), x0, eps, table(), cfg, {});
            CHECK(r.converged);
            CHECK(r.f3 < prev);
            prev = r.f3;
        }
    }

    TEST_CASE("converged run has a flat tail")
    {
        const auto cfg = three_eves();
        const RealVec x0 = feasible_region(cfg).midpoints();
        std::vector<ApgaTraceEntry> trace;
        const auto r = apga_solve(mrt_beamformer(x0, cfg), x0, 0.3, table(), cfg, {}, UpdateBlocks::joint, &trace);
        REQUIRE(r.converged);
        REQUIRE(trace.size() >= 4);
        // Two entries per outer iteration; the last one improved by less than the tolerance.
        const double last = trace.back().f3 - trace[trace.size() - 3].f3;
        CHECK(last >= 0.0);
        CHECK(last < OptimizerParams{}.obj_tol);
    }

    TEST_CASE("beamformer-only mode leaves positions untouched")
    {
        const auto cfg = default_preset();
        RealVec x(5);
        x << 0.0, 0.5, 1.0, 1.5, 2.0;
        const auto r = apga_solve(mrt_beamformer(x, cfg), x, 0.3, table(), cfg, {}, UpdateBlocks::beamformer_only);
        CHECK(r.x == x);
    }

    TEST_CASE("MRT mode returns the MRT beamformer of its positions")
    {
        const auto cfg = default_preset();
        const RealVec x0 = feasible_region(cfg).midpoints();
        const auto r = apga_solve(mrt_beamformer(x0, cfg), x0, 0.3, table(), cfg, {}, UpdateBlocks::positions_mrt);
        CHECK((r.w.values() - mrt_beamformer(r.x, cfg).values()).norm() <= 1e-12);
    }
}

TEST_SUITE("bisection")
{
    TEST_CASE("interval halves every round and stops at the accuracy")
    {
        std::vector<double> tested;
        const auto b = bisect_confidence(0.99, 0.01, [&](double e) {
            tested.push_back(e);
            return e < 0.3;
        });
        CHECK(b.rounds == 7);
        CHECK(b.hi - b.lo == doctest::Approx(1.0 / 128.0));
        CHECK(tested.front() == 0.5);
        CHECK(b.lo < 0.3);
        CHECK(b.hi >= 0.3);
        CHECK(b.any_feasible);
    }

    TEST_CASE("levels beyond the table are never certified")
    {
        int calls = 0;
        const auto b = bisect_confidence(0.99, 0.01, [&](double) {
            ++calls;
            return true;
        });
        CHECK(b.lo <= 0.99);
        CHECK(calls == b.rounds - 1);
    }

    TEST_CASE("nothing feasible")
    {
        const auto b = bisect_confidence(0.99, 0.01, [](double) { return false; });
        CHECK(!b.any_feasible);
        CHECK(b.lo == 0.0);
    }

    TEST_CASE("feasibility is monotone in the level at the solved point")
    {
        const auto cfg = default_preset();
        const RealVec x0 = feasible_region(cfg).midpoints();
        const auto r = bisection_outage_min(cfg, table(), {}, mrt_beamformer(x0, cfg), x0);
        REQUIRE(r.feasible);
        for (double e = 0.01; e <= r.eps; e += 0.01)
            CHECK(f3(r.w.values(), r.x, e, table(), cfg) > 0.0);
        CHECK(r.p_out == doctest::Approx(secrecy_outage_closed_form(r.w.values(), r.x, cfg)));
        CHECK(r.rounds == 7);
    }

    TEST_CASE("toy problems reach the grid optimum")
    {
        // maximize P(v + 1, 2 sqrt(v)) on [0, 2].
        LevelProblem one;
        one.shape = [](const RealVec &v) { return v[0] + 1.0; };
        one.argument = [](const RealVec &v) { return 2.0 * std::sqrt(v[0]); };
        one.shape_gradient = [](const RealVec &) { return RealVec::Ones(1); };
        one.argument_gradient = [](const RealVec &v) { return RealVec::Constant(1, 1.0 / std::sqrt(std::max(v[0], 1e-12))); };
        one.lower = RealVec::Zero(1);
        one.upper = RealVec::Constant(1, 2.0);
        const auto r = maximize_incomplete_gamma(one, table(), {}, RealVec::Constant(1, 1.0));
        double best = 0.0;
        for (double v = 0.0; v <= 2.0 + 1e-12; v += 0.01)
            best = std::max(best, oracle::gamma_p(v + 1.0, 2.0 * std::sqrt(v)));
        CHECK(std::abs(r.objective - best) <= 0.02);
    }
}
