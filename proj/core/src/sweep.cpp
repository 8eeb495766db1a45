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

#include "masec/sweep.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "parallel.hpp"

namespace masec
{
    namespace
    {
        int as_count(const std::string &key, double v)
        {
            if (v != std::floor(v) || v < 0.0)
                throw ConfigError(key + ": expected a nonnegative integer");
            return static_cast<int>(v);
        }

        template <class T>
        void take_prefix(std::vector<T> &values, int m, const char *key)
        {
            if (values.size() == 1)
                values.assign(static_cast<std::size_t>(m), values.front());
            else if (static_cast<int>(values.size()) >= m)
                values.resize(static_cast<std::size_t>(m));
            else
                throw ConfigError(std::string("M = ") + std::to_string(m) + " exceeds the " +
                                  std::to_string(values.size()) + " entries of `" + key + "`");
        }
    }

    std::string_view variable_name(SweepVariable v)
    {
        switch (v)
        {
        case SweepVariable::K:
            return "K";
        case SweepVariable::theta_ratio:
            return "theta_ratio";
        case SweepVariable::L:
            return "L";
        case SweepVariable::Pa_dB:
            return "Pa_dB";
        case SweepVariable::N:
            return "N";
        case SweepVariable::M:
            return "M";
        }
        return "?";
    }

    SweepVariable parse_variable(std::string_view name)
    {
        for (auto v : {SweepVariable::K, SweepVariable::theta_ratio, SweepVariable::L, SweepVariable::Pa_dB,
                       SweepVariable::N, SweepVariable::M})
            if (variable_name(v) == name)
                return v;
        throw ConfigError("unknown sweep variable `" + std::string(name) +
                          "` (expected K, theta_ratio, L, Pa_dB, N or M)");
    }

    void SweepSpec::validate() const
    {
        if (grid.empty())
            throw ConfigError("sweep: grid must not be empty");
        if (schemes.empty())
            throw ConfigError("sweep: no schemes selected");
        if (seeds.empty())
            throw ConfigError("sweep: no seeds given");
        if (restarts < 1)
            throw ConfigError("sweep: restarts must be >= 1");
        if (threads < 0)
            throw ConfigError("sweep: threads must be >= 0");
    }

    SweepSpec parse_sweep_spec(std::istream &in)
    {
        auto kv = detail::read_key_values(in);
        auto take = [&](const char *key) -> std::optional<std::string> {
            auto it = kv.find(key);
            if (it == kv.end())
                return std::nullopt;
            auto v = it->second;
            kv.erase(it);
            return v;
        };

        SweepSpec spec;
        const auto variable = take("variable");
        const auto grid = take("grid");
        if (!variable || !grid)
            throw ConfigError("sweep spec needs `variable` and `grid`");
        spec.variable = parse_variable(*variable);
        spec.grid = detail::parse_number_list("grid", *grid);
        if (auto v = take("schemes"))
        {
            spec.schemes.clear();
            std::stringstream ss(*v);
            std::string item;
            while (std::getline(ss, item, ','))
            {
                const auto b = item.find_first_not_of(" \t");
                const auto e = item.find_last_not_of(" \t");
                if (b == std::string::npos)
                    throw ConfigError("schemes: empty entry");
                spec.schemes.push_back(parse_scheme(item.substr(b, e - b + 1)));
            }
        }
        if (auto v = take("seeds"))
        {
            spec.seeds.clear();
            for (double s : detail::parse_number_list("seeds", *v))
                spec.seeds.push_back(static_cast<std::uint64_t>(as_count("seeds", s)));
        }
        if (auto v = take("restarts"))
            spec.restarts = as_count("restarts", detail::parse_number("restarts", *v));
        if (auto v = take("threads"))
            spec.threads = as_count("threads", detail::parse_number("threads", *v));

        std::stringstream rest;
        for (const auto &[k, v] : kv)
            rest << k << " = " << v << '\n';
        spec.base = parse_config(rest);
        spec.validate();
        return spec;
    }

    SweepSpec load_sweep_spec(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open sweep spec " + path.string());
        return parse_sweep_spec(in);
    }

    SystemConfig config_at(const SweepSpec &spec, double value)
    {
        SystemConfig cfg = spec.base;
        switch (spec.variable)
        {
        case SweepVariable::K:
            for (auto &k : cfg.ks)
                k = value;
            break;
        case SweepVariable::theta_ratio:
            cfg.thetas.front() = value * cfg.theta0;
            break;
        case SweepVariable::L:
            cfg.span = value;
            break;
        case SweepVariable::Pa_dB:
            cfg.pa = db_to_linear(value);
            break;
        case SweepVariable::N:
            cfg.n_antennas = as_count("N", value);
            break;
        case SweepVariable::M:
            cfg.n_eves = as_count("M", value);
            if (cfg.n_eves < 1)
                throw ConfigError("M must be >= 1");
            take_prefix(cfg.thetas, cfg.n_eves, "thetas");
            take_prefix(cfg.betas, cfg.n_eves, "betas");
            take_prefix(cfg.ks, cfg.n_eves, "ks");
            break;
        }
        cfg.validate();
        return cfg;
    }

    SweepTable run_sweep(const SweepSpec &spec, const LinearFitTable &table, const OptimizerParams &params)
    {
        spec.validate();
        params.validate();
        const std::size_t n_schemes = spec.schemes.size();
        const std::size_t n_seeds = spec.seeds.size();
        const std::size_t n_jobs = spec.grid.size() * n_schemes * n_seeds;

        struct Outcome
        {
            std::optional<ResultRow> row;
            std::optional<SkippedRun> skip;
        };
        std::vector<Outcome> outcomes(n_jobs);

        detail::run_jobs(n_jobs, spec.threads, [&](std::size_t job) {
            const double value = spec.grid[job / (n_schemes * n_seeds)];
            const SchemeId scheme = spec.schemes[(job / n_seeds) % n_schemes];
            const std::uint64_t seed = spec.seeds[job % n_seeds];
            const std::string name(scheme_name(scheme));
            try
            {
                const SystemConfig cfg = config_at(spec, value);
                const auto start = std::chrono::steady_clock::now();
                const auto r = run_scheme(scheme, cfg, table, seed, spec.restarts, params);
                const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
                outcomes[job].row = ResultRow{name,    std::string(variable_name(spec.variable)), value, r.p_out, seed,
                                              r.iterations, elapsed.count()};
            }
            catch (const ConfigError &e)
            {
                outcomes[job].skip = SkippedRun{name, value, seed, e.what()};
            }
        });

        SweepTable out;
        for (auto &o : outcomes)
        {
            if (o.row)
                out.rows.push_back(std::move(*o.row));
            else
                out.skipped.push_back(std::move(*o.skip));
        }
        return out;
    }
}
