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

#include "masec/gamma_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "masec/incomplete_gamma.hpp"
#include "masec/types.hpp"

namespace masec
{
    double inverse_lower_incomplete_gamma(double eps, double a)
    {
        if (!(a > 0.0) || std::isnan(eps))
            throw std::domain_error("inverse_lower_incomplete_gamma: shape must be > 0");
        if (eps >= 1.0)
            throw std::domain_error("inverse_lower_incomplete_gamma: eps = 1 maps to infinity");
        if (eps < 0.0)
            throw std::domain_error("inverse_lower_incomplete_gamma: eps must be in [0, 1)");
        if (eps == 0.0)
            return 0.0;

        double lo = 0.0;
        double hi = a + 20.0 * std::sqrt(a) + 20.0;
        while (regularized_lower_gamma(a, hi) < eps)
        {
            lo = hi;
            hi *= 2.0;
        }

        double t = std::clamp(a, lo, hi);
        if (t == lo || t == hi)
            t = 0.5 * (lo + hi);
        for (int iter = 0; iter < 300; ++iter)
        {
            const double residual = regularized_lower_gamma(a, t) - eps;
            if (residual == 0.0)
                return t;
            if (residual < 0.0)
                lo = t;
            else
                hi = t;
            if (std::abs(residual) <= 1e-15 * eps || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
                break;

            const double slope = gamma_density(a, t);
            double next = slope > 0.0 ? t - residual / slope : lo - 1.0;
            if (!(next > lo && next < hi))
                next = 0.5 * (lo + hi);
            const bool settled = std::abs(next - t) <= 1e-15 * t;
            t = next;
            if (settled)
                break;
        }
        return t;
    }

    LinearFitTable fit_linear_surrogate(double tau, FitRange range, int n_fit_points)
    {
        if (!(tau > 0.0 && tau < 1.0))
            throw ConfigError("fit_linear_surrogate: tau must be in (0, 1)");
        if (!(range.lo >= 1.0 && range.hi > range.lo))
            throw ConfigError("fit_linear_surrogate: fit range must satisfy 1 <= lo < hi");
        if (n_fit_points < 2)
            throw ConfigError("fit_linear_surrogate: need at least two fit points");

        LinearFitTable table;
        table.tau = tau;
        table.fit_range = range;
        table.n_fit_points = n_fit_points;

        std::vector<double> shapes(static_cast<std::size_t>(n_fit_points));
        double mean_a = 0.0;
        for (int k = 0; k < n_fit_points; ++k)
        {
            shapes[static_cast<std::size_t>(k)] = range.lo + (range.hi - range.lo) * k / (n_fit_points - 1);
            mean_a += shapes[static_cast<std::size_t>(k)];
        }
        mean_a /= n_fit_points;
        double saa = 0.0;
        for (double a : shapes)
            saa += (a - mean_a) * (a - mean_a);

        const int n_grid = static_cast<int>(std::lround(1.0 / tau));
        for (int g = 0; g < n_grid; ++g)
        {
            const double eps = g * tau;
            double mean_t = 0.0;
            std::vector<double> inv(shapes.size());
            for (std::size_t k = 0; k < shapes.size(); ++k)
            {
                inv[k] = inverse_lower_incomplete_gamma(eps, shapes[k]);
                mean_t += inv[k];
            }
            mean_t /= n_fit_points;
            double sat = 0.0;
            for (std::size_t k = 0; k < shapes.size(); ++k)
                sat += (shapes[k] - mean_a) * (inv[k] - mean_t);
            const double kappa = sat / saa;
            table.eps_grid.push_back(eps);
            table.kappa.push_back(kappa);
            table.rho.push_back(mean_t - kappa * mean_a);
        }
        return table;
    }

    SurrogateCoefficients surrogate_lookup(const LinearFitTable &table, double eps)
    {
        if (table.eps_grid.empty())
            throw std::domain_error("surrogate_lookup: empty table");
        if (!(eps >= 0.0) || eps > table.max_eps() * (1.0 + 1e-12))
            throw std::domain_error("surrogate_lookup: eps outside the tabulated range");
        const auto last = table.eps_grid.size() - 1;
        auto k = static_cast<std::size_t>(std::floor(eps / table.tau));
        if (k >= last)
            return {table.kappa[last], table.rho[last]};
        // Guard against floor() landing one cell off from rounding in eps / tau.
        if (eps < table.eps_grid[k] && k > 0)
            --k;
        else if (eps > table.eps_grid[k + 1] && k + 1 < last)
            ++k;
        const double span = table.eps_grid[k + 1] - table.eps_grid[k];
        const double s = std::clamp((eps - table.eps_grid[k]) / span, 0.0, 1.0);
        return {table.kappa[k] + s * (table.kappa[k + 1] - table.kappa[k]),
                table.rho[k] + s * (table.rho[k + 1] - table.rho[k])};
    }

    void save_table(std::ostream &out, const LinearFitTable &table)
    {
        out << std::setprecision(17);
        out << "# masec-surrogate v" << LinearFitTable::format_version << " tau=" << table.tau
            << " fit_lo=" << table.fit_range.lo << " fit_hi=" << table.fit_range.hi << " n_fit=" << table.n_fit_points
            << '\n';
        for (std::size_t k = 0; k < table.eps_grid.size(); ++k)
            out << table.eps_grid[k] << ' ' << table.kappa[k] << ' ' << table.rho[k] << '\n';
    }

    LinearFitTable load_table(std::istream &in)
    {
        std::string header;
        if (!std::getline(in, header))
            throw ConfigError("surrogate table: missing header");
        std::istringstream hs(header);
        std::string hash, magic, version;
        hs >> hash >> magic >> version;
        if (hash != "#" || magic != "masec-surrogate")
            throw ConfigError("surrogate table: bad header `" + header + "`");
        if (version != "v" + std::to_string(LinearFitTable::format_version))
            throw ConfigError("surrogate table: unsupported version " + version);

        LinearFitTable table;
        bool seen_tau = false;
        std::string field;
        while (hs >> field)
        {
            const auto eq = field.find('=');
            if (eq == std::string::npos)
                throw ConfigError("surrogate table: bad header field `" + field + "`");
            const auto key = field.substr(0, eq);
            const auto value = field.substr(eq + 1);
            if (key == "tau")
            {
                table.tau = std::stod(value);
                seen_tau = true;
            }
            else if (key == "fit_lo")
                table.fit_range.lo = std::stod(value);
            else if (key == "fit_hi")
                table.fit_range.hi = std::stod(value);
            else if (key == "n_fit")
                table.n_fit_points = std::stoi(value);
            else
                throw ConfigError("surrogate table: unknown header field `" + key + "`");
        }
        if (!seen_tau || !(table.tau > 0.0))
            throw ConfigError("surrogate table: header lacks a positive tau");

        std::string line;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            std::istringstream row(line);
            double e = 0.0, k = 0.0, r = 0.0;
            if (!(row >> e >> k >> r))
                throw ConfigError("surrogate table: malformed row `" + line + "`");
            if (!table.eps_grid.empty() && e <= table.eps_grid.back())
                throw ConfigError("surrogate table: eps column must be strictly increasing");
            table.eps_grid.push_back(e);
            table.kappa.push_back(k);
            table.rho.push_back(r);
        }
        if (table.eps_grid.size() < 2)
            throw ConfigError("surrogate table: needs at least two rows");
        return table;
    }

    void save_table(const std::filesystem::path &path, const LinearFitTable &table)
    {
        std::ofstream out(path);
        if (!out)
            throw ConfigError("cannot write surrogate table to " + path.string());
        save_table(out, table);
    }

    LinearFitTable load_table(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open surrogate table " + path.string());
        return load_table(in);
    }
}
