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

#ifndef MASEC_INCOMPLETE_GAMMA_HPP
#define MASEC_INCOMPLETE_GAMMA_HPP

namespace masec
{
    /// Regularized lower incomplete gamma P(a, t) = gamma(a, t) / Gamma(a).
    ///
    /// Power series for t < a + 1, modified Lentz continued fraction for the complement
    /// otherwise; both iterate to 1e-15 relative. Returns 0 for t <= 0 and 1 for t = +inf.
    /// Throws std::domain_error for a <= 0 or NaN arguments.
    double regularized_lower_gamma(double a, double t);

    // Density of the Gamma(a, 1) law, d/dt P(a, t).
    double gamma_density(double a, double t);
}

#endif
