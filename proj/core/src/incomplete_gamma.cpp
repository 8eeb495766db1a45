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

#include "masec/incomplete_gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace masec
{
    namespace
    {
        constexpr double rel_eps = 1e-15;
        constexpr int max_terms = 100000;

        // log(t^a e^-t / Gamma(a))
        double log_prefactor(double a, double t)
        {
            return a * std::log(t) - t - std::lgamma(a);
        }

        double lower_series(double a, double t)
        {
            double ap = a;
            double term = 1.0 / a;
            double sum = term;
            for (int n = 0; n < max_terms; ++n)
            {
                ap += 1.0;
                term *= t / ap;
                sum += term;
                if (std::abs(term) < std::abs(sum) * rel_eps)
                    break;
            }
            return sum * std::exp(log_prefactor(a, t));
        }

        // Q(a, t) by the continued fraction of the upper incomplete gamma.
        double upper_fraction(double a, double t)
        {
            constexpr double tiny = 1e-300;
            double b = t + 1.0 - a;
            double c = 1.0 / tiny;
            double d = 1.0 / b;
            double h = d;
            for (int i = 1; i < max_terms; ++i)
            {
                const double an = -i * (i - a);
                b += 2.0;
                d = an * d + b;
                if (std::abs(d) < tiny)
                    d = tiny;
                c = b + an / c;
                if (std::abs(c) < tiny)
                    c = tiny;
                d = 1.0 / d;
                const double delta = d * c;
                h *= delta;
                if (std::abs(delta - 1.0) < rel_eps)
                    break;
            }
            return std::exp(log_prefactor(a, t)) * h;
        }
    }

    double regularized_lower_gamma(double a, double t)
    {
        if (std::isnan(a) || std::isnan(t))
            throw std::domain_error("regularized_lower_gamma: NaN argument");
        if (!(a > 0.0))
            throw std::domain_error("regularized_lower_gamma: shape must be > 0");
        if (t <= 0.0)
            return 0.0;
        if (std::isinf(t))
            return 1.0;
        if (t < a + 1.0)
            return std::min(1.0, lower_series(a, t));
        return std::max(0.0, 1.0 - upper_fraction(a, t));
    }

    double gamma_density(double a, double t)
    {
        if (t <= 0.0)
            return (a == 1.0 && t == 0.0) ? 1.0 : 0.0;
        return std::exp((a - 1.0) * std::log(t) - t - std::lgamma(a));
    }
}
