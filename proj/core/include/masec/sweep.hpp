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

#ifndef MASEC_SWEEP_HPP
#define MASEC_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "masec/apga.hpp"
#include "masec/config.hpp"
#include "masec/gamma_fit.hpp"
#include "masec/results_csv.hpp"
#include "masec/schemes.hpp"

namespace masec
{
    enum class SweepVariable
    {
        K,           ///< every Rician factor set to the grid value
        theta_ratio, ///< theta_1 = value * theta_0; other eavesdroppers unchanged
        L,           ///< span
        Pa_dB,       ///< transmit power in dB
        N,           ///< number of antennas
        M            ///< first M entries of thetas / betas / ks
    };

    std::string_view variable_name(SweepVariable v);
    SweepVariable parse_variable(std::string_view name);

    /// A base scenario plus one swept variable.
    ///
    /// File format: any scenario key (see parse_config) plus
    ///
    ///     variable = K                 # K, theta_ratio, L, Pa_dB, N or M
    ///     grid     = 0, 1, 2, 3
    ///     schemes  = MA_OB, FPA_OB     # default: all seven
    ///     seeds    = 1, 2              # default: 1
    ///     restarts = 10                # RAP placements per run, default 100
    ///     threads  = 0                 # 0 = hardware concurrency
    struct SweepSpec
    {
        SystemConfig base;
        SweepVariable variable = SweepVariable::K;
        std::vector<double> grid;
        std::vector<SchemeId> schemes{all_schemes.begin(), all_schemes.end()};
        std::vector<std::uint64_t> seeds{1};
        int restarts = 100;
        int threads = 0;

        void validate() const;
    };

    SweepSpec parse_sweep_spec(std::istream &in);
    SweepSpec load_sweep_spec(const std::filesystem::path &path);

    // Base config with the swept variable set to `value`; validated.
    SystemConfig config_at(const SweepSpec &spec, double value);

    struct SkippedRun
    {
        std::string scheme;
        double variable_value;
        std::uint64_t seed;
        std::string reason;
    };

    struct SweepTable
    {
        std::vector<ResultRow> rows;
        std::vector<SkippedRun> skipped;
    };

    /// Runs every (grid value, scheme, seed) combination. Rows come back in grid order,
    /// then scheme order, then seed order, independent of the thread count. Combinations
    /// that violate a precondition land in `skipped` instead of `rows`.
    SweepTable run_sweep(const SweepSpec &spec, const LinearFitTable &table, const OptimizerParams &params = {});
}

#endif
