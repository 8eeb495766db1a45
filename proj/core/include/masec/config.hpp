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

#ifndef MASEC_CONFIG_HPP
#define MASEC_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "masec/types.hpp"

namespace masec
{
    /// Scenario scalars for one downlink: Alice with N movable antennas on a line,
    /// Bob on a pure LoS link and M colluding Rician eavesdroppers.
    ///
    /// Angles are radians. Powers and gains are linear. Lengths share the unit of `wavelength`.
    struct SystemConfig
    {
        int n_antennas = 5;
        int n_eves = 1;
        double theta0 = pi / 4.0;
        std::vector<double> thetas{1.1 * pi / 4.0};
        double beta0 = 1.0;
        std::vector<double> betas{1.0};
        std::vector<double> ks{4.0};
        double pa = 316.22776601683796; // 25 dB
        double sigma2 = 1.0;
        double rs = 3.0; // bits/s/Hz
        double wavelength = 1.0;
        double span = 4.0;
        double dmin = 0.5;

        // Throws ConfigError describing the first violated invariant.
        void validate() const;

        // True when L == (N-1) dmin and every antenna is pinned to a single point.
        bool degenerate_span() const;
    };

    // dmin = lambda/2, lambda = 1, Rs = 3, beta_i = 1, sigma^2 = 1. M = 1, K = 4, 25 dB.
    SystemConfig default_preset();

    double db_to_linear(double db);
    double linear_to_db(double linear);

    /// Parses the plain-text scenario format:
    ///
    ///     # comment
    ///     n_antennas = 5
    ///     theta0     = 0.25          # multiples of pi
    ///     thetas     = 0.275, 0.3    # one per eavesdropper
    ///     ks         = 4             # a single value is broadcast to all eavesdroppers
    ///     pa_db      = 25            # alternative to the linear `pa`
    ///
    /// Keys not present keep the value from `base`. The result is validated.
    SystemConfig parse_config(std::istream &in, const SystemConfig &base = default_preset());
    SystemConfig load_config(const std::filesystem::path &path, const SystemConfig &base = default_preset());

    // Writes every field in the same format `parse_config` reads.
    void write_config(std::ostream &out, const SystemConfig &cfg);

    namespace detail
    {
        // Splits `key = value` lines, strips comments; used by the config and sweep-spec readers.
        std::map<std::string, std::string> read_key_values(std::istream &in);
        std::vector<double> parse_number_list(const std::string &key, const std::string &text);
        double parse_number(const std::string &key, const std::string &text);
    }
}

#endif
