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

#include "masec/results_csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "masec/types.hpp"

namespace masec
{
    namespace
    {
        std::string format_real(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        template <class T>
        T parse_field(const std::string &field, const std::string &line)
        {
            T value{};
            const auto *end = field.data() + field.size();
            const auto [ptr, ec] = std::from_chars(field.data(), end, value);
            if (ec != std::errc{} || ptr != end)
                throw ConfigError("results csv: bad field `" + field + "` in `" + line + "`");
            return value;
        }
    }

    void emit_results(std::ostream &out, const std::vector<ResultRow> &rows)
    {
        out << results_header << '\n';
        for (const auto &r : rows)
            out << r.scheme << ',' << r.variable_name << ',' << format_real(r.variable_value) << ','
                << format_real(r.p_out) << ',' << r.seed << ',' << r.iterations << ',' << format_real(r.seconds)
                << '\n';
    }

    void emit_results(const std::filesystem::path &path, const std::vector<ResultRow> &rows)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw ConfigError("cannot write results to " + path.string());
        emit_results(out, rows);
    }

    std::vector<ResultRow> parse_results(std::istream &in)
    {
        std::string line;
        if (!std::getline(in, line) || line != results_header)
            throw ConfigError("results csv: unexpected header");
        std::vector<ResultRow> rows;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            std::vector<std::string> f;
            std::stringstream ss(line);
            std::string item;
            while (std::getline(ss, item, ','))
                f.push_back(item);
            if (f.size() != 7)
                throw ConfigError("results csv: expected 7 fields in `" + line + "`");
            rows.push_back({f[0], f[1], parse_field<double>(f[2], line), parse_field<double>(f[3], line),
                            parse_field<std::uint64_t>(f[4], line), parse_field<int>(f[5], line),
                            parse_field<double>(f[6], line)});
        }
        return rows;
    }
}
