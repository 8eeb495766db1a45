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

#include "masec/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace masec
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r\n");
            return s.substr(first, last - first + 1);
        }

        void broadcast(std::vector<double> &values, int count, const char *name)
        {
            if (static_cast<int>(values.size()) == count)
                return;
            if (values.size() == 1)
            {
                values.assign(static_cast<std::size_t>(count), values.front());
                return;
            }
            throw ConfigError(std::string(name) + ": expected " + std::to_string(count) +
                              " values (one per eavesdropper), got " + std::to_string(values.size()));
        }

        std::string join(const std::vector<double> &values, double scale)
        {
            std::ostringstream os;
            os << std::setprecision(17);
            for (std::size_t i = 0; i < values.size(); ++i)
                os << (i ? ", " : "") << values[i] / scale;
            return os.str();
        }
    }

    void SystemConfig::validate() const
    {
        if (n_antennas < 2)
            throw ConfigError("n_antennas must be >= 2");
        if (n_eves < 1)
            throw ConfigError("n_eves must be >= 1");
        const auto m = static_cast<std::size_t>(n_eves);
        if (thetas.size() != m || betas.size() != m || ks.size() != m)
            throw ConfigError("thetas, betas and ks must each hold n_eves = " + std::to_string(n_eves) + " values");
        for (std::size_t i = 0; i < m; ++i)
        {
            if (!std::isfinite(thetas[i]))
                throw ConfigError("thetas must be finite");
            for (std::size_t j = i + 1; j < m; ++j)
                if (thetas[i] == thetas[j])
                    throw ConfigError("eavesdropper angles must be pairwise distinct (thetas[" + std::to_string(i) +
                                      "] == thetas[" + std::to_string(j) + "])");
            if (!(betas[i] > 0.0))
                throw ConfigError("betas must be > 0");
            if (!(ks[i] >= 0.0))
                throw ConfigError("ks must be >= 0");
        }
        if (!std::isfinite(theta0))
            throw ConfigError("theta0 must be finite");
        if (!(beta0 > 0.0))
            throw ConfigError("beta0 must be > 0");
        if (!(pa > 0.0))
            throw ConfigError("pa must be > 0");
        if (!(sigma2 > 0.0))
            throw ConfigError("sigma2 must be > 0");
        if (!(rs > 0.0))
            throw ConfigError("rs must be > 0");
        if (!(wavelength > 0.0))
            throw ConfigError("wavelength must be > 0");
        if (!(dmin >= 0.0))
            throw ConfigError("dmin must be >= 0");
        const double needed = (n_antennas - 1) * dmin;
        if (!(span >= needed - 1e-12 * std::max(1.0, needed)))
            throw ConfigError("span L = " + std::to_string(span) + " is shorter than (N-1)*dmin = " + std::to_string(needed));
    }

    bool SystemConfig::degenerate_span() const
    {
        const double needed = (n_antennas - 1) * dmin;
        return std::abs(span - needed) <= 1e-12 * std::max(1.0, needed);
    }

    SystemConfig default_preset()
    {
        return SystemConfig{};
    }

    double db_to_linear(double db)
    {
        return std::pow(10.0, db / 10.0);
    }

    double linear_to_db(double linear)
    {
        return 10.0 * std::log10(linear);
    }

    namespace detail
    {
        std::map<std::string, std::string> read_key_values(std::istream &in)
        {
            std::map<std::string, std::string> out;
            std::string line;
            int line_no = 0;
            while (std::getline(in, line))
            {
                ++line_no;
                if (const auto hash = line.find('#'); hash != std::string::npos)
                    line.erase(hash);
                line = trim(line);
                if (line.empty())
                    continue;
                const auto eq = line.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("line " + std::to_string(line_no) + ": expected `key = value`");
                auto key = trim(line.substr(0, eq));
                auto value = trim(line.substr(eq + 1));
                if (key.empty() || value.empty())
                    throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
                if (!out.emplace(key, value).second)
                    throw ConfigError("line " + std::to_string(line_no) + ": duplicate key `" + key + "`");
            }
            return out;
        }

        double parse_number(const std::string &key, const std::string &text)
        {
            // Accepts plain numbers and simple ratios such as `1.1/4`.
            const auto t = trim(text);
            const auto slash = t.find('/');
            auto parse_one = [&](const std::string &s) {
                std::size_t used = 0;
                double v = 0.0;
                try
                {
                    v = std::stod(trim(s), &used);
                }
                catch (const std::exception &)
                {
                    throw ConfigError(key + ": cannot parse number `" + t + "`");
                }
                if (used != trim(s).size())
                    throw ConfigError(key + ": cannot parse number `" + t + "`");
                return v;
            };
            if (slash == std::string::npos)
                return parse_one(t);
            const double den = parse_one(t.substr(slash + 1));
            if (den == 0.0)
                throw ConfigError(key + ": division by zero in `" + t + "`");
            return parse_one(t.substr(0, slash)) / den;
        }

        std::vector<double> parse_number_list(const std::string &key, const std::string &text)
        {
            std::vector<double> out;
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ','))
                out.push_back(parse_number(key, item));
            if (out.empty())
                throw ConfigError(key + ": empty list");
            return out;
        }
    }

    SystemConfig parse_config(std::istream &in, const SystemConfig &base)
    {
        using detail::parse_number;
        using detail::parse_number_list;

        SystemConfig cfg = base;
        auto kv = detail::read_key_values(in);

        auto take = [&](const char *key) -> std::optional<std::string> {
            auto it = kv.find(key);
            if (it == kv.end())
                return std::nullopt;
            auto v = it->second;
            kv.erase(it);
            return v;
        };
        auto as_int = [](const char *key, const std::string &v) {
            const double d = parse_number(key, v);
            if (d != std::floor(d))
                throw ConfigError(std::string(key) + ": expected an integer");
            return static_cast<int>(d);
        };

        if (auto v = take("n_antennas"))
            cfg.n_antennas = as_int("n_antennas", *v);
        const auto n_eves_text = take("n_eves");
        if (auto v = take("theta0"))
            cfg.theta0 = parse_number("theta0", *v) * pi;
        if (auto v = take("thetas"))
        {
            cfg.thetas = parse_number_list("thetas", *v);
            for (auto &t : cfg.thetas)
                t *= pi;
        }
        if (n_eves_text)
            cfg.n_eves = as_int("n_eves", *n_eves_text);
        else
            cfg.n_eves = static_cast<int>(cfg.thetas.size());
        if (cfg.n_eves < 1)
            throw ConfigError("n_eves must be >= 1");
        if (auto v = take("beta0"))
            cfg.beta0 = parse_number("beta0", *v);
        if (auto v = take("betas"))
            cfg.betas = parse_number_list("betas", *v);
        if (auto v = take("ks"))
            cfg.ks = parse_number_list("ks", *v);
        const auto pa = take("pa");
        const auto pa_db = take("pa_db");
        if (pa && pa_db)
            throw ConfigError("give either `pa` or `pa_db`, not both");
        if (pa)
            cfg.pa = parse_number("pa", *pa);
        if (pa_db)
            cfg.pa = db_to_linear(parse_number("pa_db", *pa_db));
        if (auto v = take("sigma2"))
            cfg.sigma2 = parse_number("sigma2", *v);
        if (auto v = take("rs"))
            cfg.rs = parse_number("rs", *v);
        if (auto v = take("wavelength"))
            cfg.wavelength = parse_number("wavelength", *v);
        if (auto v = take("span"))
            cfg.span = parse_number("span", *v);
        if (auto v = take("dmin"))
            cfg.dmin = parse_number("dmin", *v);

        if (!kv.empty())
            throw ConfigError("unknown key `" + kv.begin()->first + "`");

        broadcast(cfg.thetas, cfg.n_eves, "thetas");
        broadcast(cfg.betas, cfg.n_eves, "betas");
        broadcast(cfg.ks, cfg.n_eves, "ks");
        cfg.validate();
        return cfg;
    }

    SystemConfig load_config(const std::filesystem::path &path, const SystemConfig &base)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file " + path.string());
        return parse_config(in, base);
    }

    void write_config(std::ostream &out, const SystemConfig &cfg)
    {
        const auto old_precision = out.precision(17);
        out << "n_antennas = " << cfg.n_antennas << '\n'
            << "n_eves = " << cfg.n_eves << '\n'
            << "theta0 = " << cfg.theta0 / pi << "  # x pi\n"
            << "thetas = " << join(cfg.thetas, pi) << "  # x pi\n"
            << "beta0 = " << cfg.beta0 << '\n'
            << "betas = " << join(cfg.betas, 1.0) << '\n'
            << "ks = " << join(cfg.ks, 1.0) << '\n'
            << "pa = " << cfg.pa << "  # " << linear_to_db(cfg.pa) << " dB\n"
            << "sigma2 = " << cfg.sigma2 << '\n'
            << "rs = " << cfg.rs << '\n'
            << "wavelength = " << cfg.wavelength << '\n'
            << "span = " << cfg.span << '\n'
            << "dmin = " << cfg.dmin << '\n';
        out.precision(old_precision);
    }
}
