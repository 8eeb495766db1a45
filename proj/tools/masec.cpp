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

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "masec/apga.hpp"
#include "masec/outage.hpp"
#include "masec/results_csv.hpp"
#include "masec/schemes.hpp"
#include "masec/sweep.hpp"
#include "masec/zero_forcing.hpp"

using namespace masec;

namespace
{
    struct Options
    {
        std::string config;
        std::string scheme = "MA_OB";
        std::uint64_t seed = 1;
        std::optional<int> restarts;
        std::string out;
        std::string trace;
        std::string table;
        double tau = 0.01;
        std::int64_t trials = 100000;
        int threads = 0;
    };

    LinearFitTable obtain_table(const Options &opt)
    {
        return opt.table.empty() ? fit_linear_surrogate(opt.tau) : load_table(opt.table);
    }

    void warn_if_degenerate(const SystemConfig &cfg)
    {
        if (cfg.degenerate_span())
            std::cerr << "warning: span equals (N-1)*dmin, every antenna position is fixed\n";
    }

    // Writes to `path`, or to stdout when it is empty.
    template <class Fn>
    void write_output(const std::string &path, Fn &&fn)
    {
        if (path.empty())
        {
            fn(std::cout);
            return;
        }
        std::ofstream out(path);
        if (!out)
            throw ConfigError("cannot write " + path);
        fn(out);
    }

    int fit_table(const Options &opt)
    {
        const auto table = fit_linear_surrogate(opt.tau);
        write_output(opt.out, [&](std::ostream &os) { save_table(os, table); });
        return 0;
    }

    void write_solve_trace(SchemeId id, const SchemeResult &r, const SystemConfig &cfg, const LinearFitTable &table,
                           const std::string &path)
    {
        const RealVec x0 = feasible_region(cfg).midpoints();
        std::ofstream out(path);
        if (!out)
            throw ConfigError("cannot write " + path);
        switch (id)
        {
        case SchemeId::MA_OB:
        case SchemeId::MA_MRT:
        {
            if (!r.feasible)
                throw ConfigError("no confidence level was certified; nothing to trace");
            std::vector<ApgaTraceEntry> trace;
            const auto blocks = id == SchemeId::MA_OB ? UpdateBlocks::joint : UpdateBlocks::positions_mrt;
            apga_solve(mrt_beamformer(x0, cfg), x0, r.eps, table, cfg, {}, blocks, &trace);
            write_trace(out, trace);
            break;
        }
        case SchemeId::MA_ZF:
        {
            std::vector<PgdTraceEntry> trace;
            pgd_solve(x0, cfg, {}, &trace);
            write_trace(out, trace);
            break;
        }
        default:
            throw ConfigError("--trace is available for MA_OB, MA_MRT and MA_ZF");
        }
    }

    int solve(const Options &opt)
    {
        const auto cfg = load_config(opt.config);
        warn_if_degenerate(cfg);
        const auto id = parse_scheme(opt.scheme);
        const auto table = obtain_table(opt);

        const auto t0 = std::chrono::steady_clock::now();
        const auto r = run_scheme(id, cfg, table, opt.seed, opt.restarts.value_or(100));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::cerr << scheme_name(id) << ": P_out = " << r.p_out << ", iterations = " << r.iterations;
        if (!std::isnan(r.eps))
            std::cerr << ", eps = " << r.eps << (r.feasible ? "" : " (not certified)");
        std::cerr << "\n  x = [" << r.x.transpose() << "]\n";

        const ResultRow row{std::string(scheme_name(id)), "none", 0.0, r.p_out, opt.seed, r.iterations, secs};
        write_output(opt.out, [&](std::ostream &os) { emit_results(os, {row}); });
        if (!opt.trace.empty())
            write_solve_trace(id, r, cfg, table, opt.trace);
        return 0;
    }

    int sweep(const Options &opt)
    {
        auto spec = load_sweep_spec(opt.config);
        if (opt.restarts)
            spec.restarts = *opt.restarts;
        if (opt.threads > 0)
            spec.threads = opt.threads;
        spec.validate();
        warn_if_degenerate(spec.base);
        const auto table = obtain_table(opt);

        const auto result = run_sweep(spec, table);
        for (const auto &s : result.skipped)
            std::cerr << "skipped " << s.scheme << " at " << variable_name(spec.variable) << " = " << s.variable_value
                      << " (seed " << s.seed << "): " << s.reason << '\n';
        write_output(opt.out, [&](std::ostream &os) { emit_results(os, result.rows); });
        return 0;
    }

    int mc_check(const Options &opt)
    {
        const auto cfg = load_config(opt.config);
        warn_if_degenerate(cfg);
        if (opt.trials <= 0)
            throw ConfigError("--trials must be positive");
        const RealVec x = feasible_region(cfg).midpoints();
        const CplxVec w = mrt_beamformer(x, cfg).values();
        const double closed = secrecy_outage_closed_form(w, x, cfg);
        const double mc = monte_carlo_outage(w, x, cfg, opt.trials, opt.seed, opt.threads);
        std::printf("closed_form,monte_carlo,difference,trials\n%.10g,%.10g,%.3e,%lld\n", closed, mc, closed - mc,
                    static_cast<long long>(opt.trials));
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Secrecy outage optimization for movable-antenna arrays"};
    app.require_subcommand(1);
    Options opt;

    auto *fit = app.add_subcommand("fit-table", "Fit the linear surrogate table and write it");
    fit->add_option("--tau", opt.tau, "Confidence grid step")->check(CLI::PositiveNumber);
    fit->add_option("--out", opt.out, "Output path (default: stdout)");

    auto *slv = app.add_subcommand("solve", "Run one scheme on one scenario");
    slv->add_option("--config", opt.config, "Scenario file")->required()->check(CLI::ExistingFile);
    slv->add_option("--scheme", opt.scheme, "MA_OB, MA_ZF, RAP_OB, RAP_ZF, FPA_OB, FPA_ZF or MA_MRT");
    slv->add_option("--seed", opt.seed, "Seed for random placements");
    slv->add_option("--restarts", opt.restarts, "Random placements for RAP schemes (default 100)");
    slv->add_option("--table", opt.table, "Surrogate table from fit-table (default: fit in memory)");
    slv->add_option("--out", opt.out, "Results CSV (default: stdout)");
    slv->add_option("--trace", opt.trace, "Per-iteration trace CSV");

    auto *swp = app.add_subcommand("sweep", "Run a parameter sweep");
    swp->add_option("--config", opt.config, "Sweep spec file")->required()->check(CLI::ExistingFile);
    swp->add_option("--restarts", opt.restarts, "Override the spec's restarts");
    swp->add_option("--threads", opt.threads, "Worker threads (default: from spec)");
    swp->add_option("--table", opt.table, "Surrogate table from fit-table");
    swp->add_option("--out", opt.out, "Results CSV (default: stdout)");

    auto *mc = app.add_subcommand("mc-check", "Compare the closed-form outage against Monte Carlo");
    mc->add_option("--config", opt.config, "Scenario file")->required()->check(CLI::ExistingFile);
    mc->add_option("--seed", opt.seed, "Monte Carlo seed");
    mc->add_option("--trials", opt.trials, "Monte Carlo trials");
    mc->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (fit->parsed())
            return fit_table(opt);
        if (slv->parsed())
            return solve(opt);
        if (swp->parsed())
            return sweep(opt);
        return mc_check(opt);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
