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

#ifndef MASEC_GAMMA_FIT_HPP
#define MASEC_GAMMA_FIT_HPP

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace masec
{
    /// t >= 0 with P(a, t) = eps.
    ///
    /// Brackets the root in [0, a + 20 sqrt(a) + 20] (doubling the upper end if needed),
    /// then runs Newton steps on P(a, t) - eps, falling back to bisection whenever a step
    /// leaves the bracket. Throws std::domain_error unless 0 <= eps < 1 and a > 0.
    double inverse_lower_incomplete_gamma(double eps, double a);

    struct FitRange
    {
        double lo = 1.0;
        double hi = 100.0;
    };

    struct SurrogateCoefficients
    {
        double kappa;
        double rho;
    };

    /// Per-probability least-squares lines kappa(eps) a + rho(eps) ~ P^-1(eps, a).
    ///
    /// The grid is eps_k = k tau for k = 0 .. round(1/tau) - 1, so it stops one step short of 1
    /// where the inverse diverges.
    struct LinearFitTable
    {
        static constexpr int format_version = 1;

        double tau = 0.01;
        FitRange fit_range{};
        int n_fit_points = 1000;
        std::vector<double> eps_grid;
        std::vector<double> kappa;
        std::vector<double> rho;

        double max_eps() const { return eps_grid.back(); }
    };

    LinearFitTable fit_linear_surrogate(double tau = 0.01, FitRange range = {}, int n_fit_points = 1000);

    // Linear interpolation between neighbouring grid points. Throws std::domain_error
    // outside [0, max_eps()].
    SurrogateCoefficients surrogate_lookup(const LinearFitTable &table, double eps);

    /// Text format, one header line then one `eps kappa rho` row per grid point:
    ///
    ///     # masec-surrogate v1 tau=0.01 fit_lo=1 fit_hi=100 n_fit=1000
    ///     0 0 0
    ///     0.01 0.81675221024491709 -4.9119324436977701
    void save_table(std::ostream &out, const LinearFitTable &table);
    LinearFitTable load_table(std::istream &in);
    void save_table(const std::filesystem::path &path, const LinearFitTable &table);
    LinearFitTable load_table(const std::filesystem::path &path);
}

#endif
