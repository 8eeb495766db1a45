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

#include <map>
#include <sstream>

#include "doctest.h"
#include "masec/outage.hpp"
#include "masec/results_csv.hpp"
#include "masec/schemes.hpp"
#include "masec/sweep.hpp"
#include "masec/zero_forcing.hpp"
#include "oracles.hpp"

using namespace masec;

namespace
{
    const LinearFitTable &table()
    {
        static const LinearFitTable t = fit_linear_surrogate();
        return t;
    }

    SweepSpec parse(const std::string &text)
    {
        std::istringstream in(text);
        return parse_sweep_spec(in);
    }
}

TEST_SUITE("schemes")
{
    TEST_CASE("names round-trip and unknown names are rejected")
    {
        for (auto id : all_schemes)
            CHECK(parse_scheme(scheme_name(id)) == id);
        CHECK(parse_scheme("ma+ob") == SchemeId::MA_OB);
        CHECK_THROWS_AS(parse_scheme("MA_XYZ"), ConfigError);
    }

    TEST_CASE("half-wavelength fixed layout")
    {
        auto cfg = default_preset();
        cfg.n_antennas = 4;
        const RealVec x = fpa_positions(cfg);
        CHECK(x[0] == 0.0);
        CHECK(x[3] == doctest::Approx(1.5));
    }

    TEST_CASE("random placements are feasible and seeded")
    {
        const auto region = feasible_region(default_preset());
        const RealVec a = random_feasible_positions(region, 4);
        CHECK(region.contains(a));
        CHECK(a == random_feasible_positions(region, 4));
        CHECK(a != random_feasible_positions(region, 5));
    }

    TEST_CASE("Rayleigh eavesdropper: every MRT-based scheme lands on the same outage")
    {
        auto cfg = default_preset();
        cfg.ks = {0.0};
        cfg.pa = db_to_linear(15.0);
        cfg.span = 3.0;
        std::vector<double> p;
        for (auto id : {SchemeId::MA_OB, SchemeId::RAP_OB, SchemeId::FPA_OB, SchemeId::MA_MRT})
            p.push_back(run_scheme(id, cfg, table(), 1, 3).p_out);
        for (double v : p)
            CHECK(std::abs(v - p.front()) <= 1e-6);
    }

    TEST_CASE("ZF schemes need a spare antenna")
    {
        auto cfg = default_preset();
        cfg.n_antennas = 2;
        cfg.n_eves = 2;
        cfg.thetas = {0.9, 1.2};
        cfg.betas = {1.0, 1.0};
        cfg.ks = {4.0, 4.0};
        for (auto id : {SchemeId::MA_ZF, SchemeId::RAP_ZF, SchemeId::FPA_ZF})
            CHECK_THROWS_AS(run_scheme(id, cfg, table(), 1, 2), ConfigError);
        CHECK_NOTHROW(run_scheme(SchemeId::FPA_OB, cfg, table(), 1, 2));
    }

    TEST_CASE("results are probabilities, deterministic per seed, and ZF results null the eavesdropper")
    {
        auto cfg = default_preset();
        cfg.pa = db_to_linear(15.0);
        cfg.span = 3.0;
        for (auto id : all_schemes)
        {
            const auto r = run_scheme(id, cfg, table(), 9, 3);
            CHECK(r.p_out >= 0.0);
            CHECK(r.p_out <= 1.0);
            CHECK(std::abs(r.w.values().norm() - 1.0) <= 1e-12);
            if (uses_zero_forcing(id))
                CHECK(std::norm(apply_channel(steering_vector(r.x, cfg.thetas[0], cfg), r.w.values())) <= 1e-18);
            if (id == SchemeId::RAP_OB || id == SchemeId::RAP_ZF)
                CHECK(run_scheme(id, cfg, table(), 9, 3).p_out == r.p_out);
        }
    }

    TEST_CASE("optimized positions do no worse than the fixed array")
    {
        auto cfg = default_preset();
        cfg.pa = db_to_linear(15.0);
        cfg.span = 3.0;
        for (double k : {2.0, 6.0, 10.0})
        {
            cfg.ks = {k};
            const double ma = run_scheme(SchemeId::MA_OB, cfg, table(), 1, 3).p_out;
            const double fpa = run_scheme(SchemeId::FPA_OB, cfg, table(), 1, 3).p_out;
            CHECK(ma <= fpa + 0.01);
        }
    }
}

TEST_SUITE("sweep")
{
    TEST_CASE("spec parsing")
    {
        const auto spec = parse("pa_db = 15\nspan = 3\nvariable = K\ngrid = 0, 1, 2\nschemes = MA_OB, FPA_ZF\n"
                                "seeds = 3, 4\nrestarts = 5\nthreads = 2\n");
        CHECK(spec.variable == SweepVariable::K);
        CHECK(spec.grid.size() == 3);
        CHECK(spec.schemes.size() == 2);
        CHECK(spec.seeds == std::vector<std::uint64_t>{3, 4});
        CHECK(spec.restarts == 5);
        CHECK(spec.threads == 2);
        CHECK(spec.base.span == 3.0);

        CHECK_THROWS_AS(parse("grid = 1\n"), ConfigError);
        CHECK_THROWS_AS(parse("variable = Q\ngrid = 1\n"), ConfigError);
        CHECK_THROWS_AS(parse("variable = K\ngrid = 1\nschemes = nope\n"), ConfigError);
        CHECK_THROWS_AS(parse("variable = K\ngrid = 1\nrestarts = 0\n"), ConfigError);
    }

    TEST_CASE("each variable lands in the right field")
    {
        auto spec = parse("thetas = 1.15/4, 1.35/4, 1.4/4\nn_antennas = 8\nspan = 5.5\nvariable = M\ngrid = 1\n");
        auto cfg = config_at(spec, 2);
        CHECK(cfg.n_eves == 2);
        CHECK(cfg.thetas.size() == 2);
        CHECK(cfg.ks.size() == 2);
        CHECK_THROWS_AS(config_at(spec, 4), ConfigError);

        spec.variable = SweepVariable::theta_ratio;
        CHECK(config_at(spec, 1.5).thetas[0] == doctest::Approx(1.5 * spec.base.theta0));
        spec.variable = SweepVariable::Pa_dB;
        CHECK(config_at(spec, 20).pa == doctest::Approx(100.0));
        spec.variable = SweepVariable::L;
        CHECK(config_at(spec, 6.0).span == 6.0);
        spec.variable = SweepVariable::N;
        CHECK(config_at(spec, 6).n_antennas == 6);
        CHECK_THROWS_AS(config_at(spec, 20), ConfigError);
        spec.variable = SweepVariable::K;
        CHECK(config_at(spec, 7).ks == std::vector<double>{7, 7, 7});
    }

    TEST_CASE("rows follow grid, scheme and seed order and skips are reported")
    {
        auto spec = parse("pa_db = 15\nspan = 3\nvariable = N\ngrid = 1, 2, 3\nschemes = FPA_ZF, FPA_OB\n"
                          "seeds = 1, 2\nrestarts = 2\nthreads = 3\n");
        const auto t = run_sweep(spec, table());
        // N = 1 is invalid for every scheme; ZF needs N >= 2 with one eavesdropper.
        CHECK(t.skipped.size() == 4);
        REQUIRE(t.rows.size() == 8);
        CHECK(t.rows[0].variable_value == 2.0);
        CHECK(t.rows[0].scheme == "FPA_ZF");
        CHECK(t.rows[0].seed == 1);
        CHECK(t.rows[1].seed == 2);
        CHECK(t.rows[2].scheme == "FPA_OB");
        CHECK(t.rows[7].variable_value == 3.0);
        for (const auto &r : t.rows)
        {
            CHECK(r.variable_name == "N");
            CHECK(r.p_out >= 0.0);
            CHECK(r.p_out <= 1.0);
        }

        spec.threads = 1;
        const auto serial = run_sweep(spec, table());
        REQUIRE(serial.rows.size() == t.rows.size());
        for (std::size_t k = 0; k < t.rows.size(); ++k)
            CHECK(serial.rows[k].p_out == t.rows[k].p_out);
    }

    TEST_CASE("dominance chains on the Rician-factor grid")
    {
        const auto spec = parse("pa_db = 15\nspan = 3\nvariable = K\ngrid = 2, 4, 6, 8, 10\nrestarts = 3\n");
        const auto t = run_sweep(spec, table());
        for (double k : spec.grid)
        {
            std::map<std::string, double> p;
            for (const auto &r : t.rows)
                if (r.variable_value == k)
                    p[r.scheme] = r.p_out;
            CHECK(p["MA_OB"] <= p["RAP_OB"] + 0.01);
            CHECK(p["RAP_OB"] <= p["FPA_OB"] + 0.01);
            CHECK(p["MA_ZF"] <= p["RAP_ZF"] + 0.01);
            CHECK(p["RAP_ZF"] <= p["FPA_ZF"] + 0.01);
        }
    }

    TEST_CASE("more eavesdroppers never help")
    {
        const auto spec = parse("pa_db = 15\nn_antennas = 8\nspan = 5.5\nthetas = 1.15/4, 1.35/4, 1.55/4, 1.75/4\n"
                                "ks = 4\nvariable = M\ngrid = 1, 2, 3, 4\nrestarts = 3\n");
        const auto t = run_sweep(spec, table());
        REQUIRE(t.skipped.empty());
        for (auto id : all_schemes)
        {
            std::vector<double> p;
            for (const auto &r : t.rows)
                if (r.scheme == scheme_name(id))
                    p.push_back(r.p_out);
            for (std::size_t k = 1; k < p.size(); ++k)
                CHECK(p[k] >= p[k - 1] - 0.01);
        }
    }

    TEST_CASE("wide angular separation lets zero forcing catch up")
    {
        const auto spec = parse("pa_db = 15\nspan = 3\nks = 10\nvariable = theta_ratio\ngrid = 1.25, 1.35, 1.45\n"
                                "schemes = MA_OB, MA_ZF\n");
        const auto t = run_sweep(spec, table());
        REQUIRE(t.rows.size() == 6);
        for (std::size_t k = 0; k < t.rows.size(); k += 2)
            CHECK(std::abs(t.rows[k + 1].p_out - t.rows[k].p_out) <= 0.02);
    }

    TEST_CASE("a longer span helps until it stops mattering")
    {
        const auto spec = parse("pa_db = 15\nvariable = L\ngrid = 2, 3, 4, 6, 8, 12, 16\nschemes = MA_OB, MA_ZF\n");
        const auto t = run_sweep(spec, table());
        REQUIRE(t.rows.size() == 14);
        std::vector<double> ob, zf;
        for (const auto &r : t.rows)
            (r.scheme == "MA_OB" ? ob : zf).push_back(r.p_out);
        for (std::size_t k = 1; k < ob.size(); ++k)
        {
            CHECK(ob[k] <= ob[k - 1] + 0.01);
            CHECK(zf[k] <= zf[k - 1] + 0.01);
        }
        CHECK(std::abs(ob[6] - ob[5]) <= 0.01);
        // With enough room the two beamformers meet.
        CHECK(std::abs(zf[6] - ob[6]) <= 0.01);
    }

    TEST_CASE("transmit power sweep is nonincreasing and flattens")
    {
        const auto spec = parse("pa_db = 15\nspan = 3\nvariable = Pa_dB\ngrid = 0, 10, 20, 30, 40\n"
                                "schemes = MA_OB, FPA_ZF\nrestarts = 2\n");
        const auto t = run_sweep(spec, table());
        for (const char *name : {"MA_OB", "FPA_ZF"})
        {
            std::vector<double> p;
            for (const auto &r : t.rows)
                if (r.scheme == name)
                    p.push_back(r.p_out);
            REQUIRE(p.size() == 5);
            for (std::size_t k = 1; k < p.size(); ++k)
                CHECK(p[k] <= p[k - 1] + 0.01);
            CHECK(std::abs(p[4] - p[3]) <= 0.02);
        }
    }
}

TEST_SUITE("results csv")
{
    TEST_CASE("empty table is a header-only file")
    {
        std::ostringstream os;
        emit_results(os, {});
        CHECK(os.str() == std::string(results_header) + "\n");
    }

    TEST_CASE("round trip is exact and output is byte-identical")
    {
        const std::vector<ResultRow> rows{{"MA_OB", "K", 3.0, 0.123456789012345678, 7, 412, 0.015625},
                                          {"FPA_ZF", "K", 0.1, 1.0 / 3.0, 18446744073709551615ULL, 0, 2.5e-7}};
        std::ostringstream a, b;
        emit_results(a, rows);
        emit_results(b, rows);
        CHECK(a.str() == b.str());
        std::istringstream in(a.str());
        CHECK(parse_results(in) == rows);
    }

    TEST_CASE("bad files are rejected")
    {
        std::istringstream wrong_header("a,b,c\n");
        CHECK_THROWS_AS(parse_results(wrong_header), ConfigError);
        std::istringstream short_row(std::string(results_header) + "\nMA_OB,K,1\n");
        CHECK_THROWS_AS(parse_results(short_row), ConfigError);
    }
}
