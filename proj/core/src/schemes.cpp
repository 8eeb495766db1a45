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

#include "masec/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <random>

#include "masec/outage.hpp"
#include "masec/zero_forcing.hpp"

namespace masec
{
    namespace
    {
        constexpr double no_eps = std::numeric_limits<double>::quiet_NaN();

        SchemeResult from_bisection(const BisectionResult &b)
        {
            return {b.p_out, b.w, b.x, b.iterations, b.eps, b.feasible};
        }

        SchemeResult optimized_beamformer(const RealVec &x, const SystemConfig &cfg, const LinearFitTable &table,
                                          const OptimizerParams &params)
        {
            return from_bisection(
                bisection_outage_min(cfg, table, params, mrt_beamformer(x, cfg), x, UpdateBlocks::beamformer_only));
        }

        SchemeResult zero_forcing_at(const RealVec &x, const SystemConfig &cfg, int iterations)
        {
            return {zf_outage(x, cfg), zf_beamformer(x, cfg), x, iterations, no_eps, true};
        }
    }

    std::string_view scheme_name(SchemeId id)
    {
        switch (id)
        {
        case SchemeId::MA_OB:
            return "MA_OB";
        case SchemeId::MA_ZF:
            return "MA_ZF";
        case SchemeId::RAP_OB:
            return "RAP_OB";
        case SchemeId::RAP_ZF:
            return "RAP_ZF";
        case SchemeId::FPA_OB:
            return "FPA_OB";
        case SchemeId::FPA_ZF:
            return "FPA_ZF";
        case SchemeId::MA_MRT:
            return "MA_MRT";
        }
        return "?";
    }

    SchemeId parse_scheme(std::string_view name)
    {
        std::string upper(name);
        std::transform(upper.begin(), upper.end(), upper.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        std::replace(upper.begin(), upper.end(), '+', '_');
        for (auto id : all_schemes)
            if (scheme_name(id) == upper)
                return id;
        throw ConfigError("unknown scheme `" + std::string(name) +
                          "` (expected MA_OB, MA_ZF, RAP_OB, RAP_ZF, FPA_OB, FPA_ZF or MA_MRT)");
    }

    bool uses_zero_forcing(SchemeId id)
    {
        return id == SchemeId::MA_ZF || id == SchemeId::RAP_ZF || id == SchemeId::FPA_ZF;
    }

    RealVec fpa_positions(const SystemConfig &cfg)
    {
        return RealVec::LinSpaced(cfg.n_antennas, 0.0, 0.5 * cfg.wavelength * (cfg.n_antennas - 1));
    }

    RealVec random_feasible_positions(const FeasibleRegion &region, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        RealVec x(region.size());
        for (Eigen::Index i = 0; i < region.size(); ++i)
        {
            if (region.highs(i) > region.lows(i))
                x(i) = std::uniform_real_distribution<double>(region.lows(i), region.highs(i))(rng);
            else
                x(i) = region.lows(i);
        }
        return x;
    }

    SchemeResult run_scheme(SchemeId scheme, const SystemConfig &cfg, const LinearFitTable &table,
                            std::uint64_t seed, int restarts, const OptimizerParams &params)
    {
        cfg.validate();
        params.validate();
        if (restarts < 1)
            throw ConfigError("restarts must be >= 1");
        if (uses_zero_forcing(scheme) && cfg.n_antennas < cfg.n_eves + 1)
            throw ConfigError(std::string(scheme_name(scheme)) + " needs N >= M + 1");

        const FeasibleRegion region = feasible_region(cfg);
        const RealVec mid = region.midpoints();

        switch (scheme)
        {
        case SchemeId::MA_OB:
            return from_bisection(bisection_outage_min(cfg, table, params, mrt_beamformer(mid, cfg), mid));
        case SchemeId::MA_MRT:
            return from_bisection(
                bisection_outage_min(cfg, table, params, mrt_beamformer(mid, cfg), mid, UpdateBlocks::positions_mrt));
        case SchemeId::MA_ZF:
        {
            const auto r = pgd_solve(mid, cfg, params);
            return zero_forcing_at(r.x, cfg, r.iterations);
        }
        case SchemeId::FPA_OB:
            return optimized_beamformer(fpa_positions(cfg), cfg, table, params);
        case SchemeId::FPA_ZF:
            return zero_forcing_at(fpa_positions(cfg), cfg, 0);
        case SchemeId::RAP_OB:
        case SchemeId::RAP_ZF:
        {
            std::optional<SchemeResult> best;
            int iterations = 0;
            for (int r = 0; r < restarts; ++r)
            {
                const RealVec x = random_feasible_positions(region, derive_seed(seed, static_cast<std::uint64_t>(r)));
                auto res = scheme == SchemeId::RAP_OB ? optimized_beamformer(x, cfg, table, params)
                                                      : zero_forcing_at(x, cfg, 0);
                iterations += res.iterations;
                if (!best || res.p_out < best->p_out)
                    best = std::move(res);
            }
            best->iterations = iterations;
            return *best;
        }
        }
        throw std::logic_error("run_scheme: unhandled scheme");
    }
}
