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

#ifndef MASEC_SRC_BACKTRACKING_HPP
#define MASEC_SRC_BACKTRACKING_HPP

#include "masec/types.hpp"

namespace masec::detail
{
    inline constexpr double min_step = 1e-15;

    // First-order term <grad f, step> in real coordinates. Complex gradients are the
    // conjugate-Wirtinger form df/dw*, whose real-coordinate counterpart is twice as long.
    inline double linear_term(const RealVec &gradient, const RealVec &step)
    {
        return gradient.dot(step);
    }

    inline double linear_term(const CplxVec &gradient, const CplxVec &step)
    {
        return 2.0 * gradient.dot(step).real();
    }

    template <class Vec>
    struct AscentStep
    {
        Vec point;
        double value;
        double delta;
        double model; // quadratic model at the accepted point
        bool accepted;
    };

    /// Projected gradient step p+ = project(p + delta g), shrinking delta by chi until
    ///   f(p+) >= f(p) + <g, p+ - p> - ||p+ - p||^2 / delta.
    /// Below min_step the current point is returned unchanged with accepted = false.
    template <class Vec, class Objective, class Project>
    AscentStep<Vec> backtracking_ascent(const Vec &current, double value, const Vec &gradient, double delta0, double chi,
                                        Objective &&objective, Project &&project)
    {
        double delta = delta0;
        while (delta >= min_step)
        {
            Vec candidate = project(Vec(current + delta * gradient));
            const Vec step = candidate - current;
            const double model = value + linear_term(gradient, step) - step.squaredNorm() / delta;
            const double candidate_value = objective(candidate);
            if (candidate_value >= model)
                return {std::move(candidate), candidate_value, delta, model, true};
            delta *= chi;
        }
        return {current, value, delta, value, false};
    }
}

#endif
