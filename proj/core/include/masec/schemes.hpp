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

#ifndef MASEC_SCHEMES_HPP
#define MASEC_SCHEMES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "masec/apga.hpp"
#include "masec/channel.hpp"
#include "masec/config.hpp"
#include "masec/gamma_fit.hpp"

namespace masec
{
    /// Position policy x beamforming policy.
    ///
    ///   MA_OB   optimized positions, optimized beamformer (bisection + alternating ascent)
    ///   MA_ZF   optimized positions (descent on the null-steering loss), ZF beamformer
    ///   RAP_OB  best of `restarts` random feasible placements, optimized beamformer
    ///   RAP_ZF  best of `restarts` random feasible placements, ZF beamformer
    ///   FPA_OB  fixed half-wavelength array, optimized beamformer
    ///   FPA_ZF  fixed half-wavelength array, ZF beamformer
    ///   MA_MRT  optimized positions with the beamformer tied to MRT
    enum class SchemeId
    {
        MA_OB,
        MA_ZF,
        RAP_OB,
        RAP_ZF,
        FPA_OB,
        FPA_ZF,
        MA_MRT
    };

    inline constexpr std::array all_schemes{SchemeId::MA_OB,  SchemeId::MA_ZF,  SchemeId::RAP_OB, SchemeId::RAP_ZF,
                                            SchemeId::FPA_OB, SchemeId::FPA_ZF, SchemeId::MA_MRT};

    std::string_view scheme_name(SchemeId id);
    // Case-insensitive; throws ConfigError for unknown names.
    SchemeId parse_scheme(std::string_view name);
    bool uses_zero_forcing(SchemeId id);

    // 0, lambda/2, lambda, ... ; the span constraint does not apply to this layout.
    RealVec fpa_positions(const SystemConfig &cfg);

    // One uniform draw inside every box of the feasible region.
    RealVec random_feasible_positions(const FeasibleRegion &region, std::uint64_t seed);

    struct SchemeResult
    {
        double p_out;
        Beamformer w;
        RealVec x;
        int iterations;
        double eps;     ///< certified confidence level; NaN for ZF schemes
        bool feasible;  ///< false when no confidence level could be certified
    };

    /// Runs one scheme on `cfg`. `seed` and `restarts` only affect the RAP schemes.
    /// Throws ConfigError if the scheme's preconditions do not hold (ZF with N < M + 1).
    SchemeResult run_scheme(SchemeId scheme, const SystemConfig &cfg, const LinearFitTable &table,
                            std::uint64_t seed, int restarts, const OptimizerParams &params = {});
}

#endif
