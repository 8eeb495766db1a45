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

#ifndef MASEC_RESULTS_CSV_HPP
#define MASEC_RESULTS_CSV_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace masec
{
    struct ResultRow
    {
        std::string scheme;
        std::string variable_name;
        double variable_value = 0.0;
        double p_out = 0.0;
        std::uint64_t seed = 0;
        int iterations = 0;
        double seconds = 0.0;

        bool operator==(const ResultRow &) const = default;
    };

    inline constexpr const char *results_header = "scheme,variable_name,variable_value,p_out,seed,iterations,seconds";

    /// Header line then one row per result; reals printed with 17 significant digits so
    /// that parse_results reproduces them exactly.
    void emit_results(std::ostream &out, const std::vector<ResultRow> &rows);
    void emit_results(const std::filesystem::path &path, const std::vector<ResultRow> &rows);

    // Throws ConfigError on a wrong header or malformed row.
    std::vector<ResultRow> parse_results(std::istream &in);
}

#endif
