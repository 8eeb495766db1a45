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

#ifndef MASEC_OUTAGE_HPP
#define MASEC_OUTAGE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "masec/config.hpp"
#include "masec/types.hpp"

namespace masec
{
    /// Statistics of |h_i w|^2 for one eavesdropper seen as a Nakagami-m power.
    struct EveLinkStats
    {
        double z_tilde; ///< mean power
        double k_tilde; ///< effective Rician factor K_i |hbar_i w|^2
        double m_tilde; ///< (k+1)^2 / (2k+1)
    };

    /// Shape/scale of the Gamma law matched to the first two moments of sum_i |h_i w|^2.
    struct GammaMoments
    {
        double mu;
        double vartheta;
    };

    /// Building blocks shared by the closed form, the surrogate objective and its gradients.
    ///
    /// With c_i = beta_i / (K_i + 1) and a_i = |hbar_i w|^2:
    ///   mean_sum  = sum_i c_i (K_i a_i + 1)        (= sum of mean powers)
    ///   var_sum   = sum_i c_i^2 (2 K_i a_i + 1)    (= sum of variances)
    ///   threshold = sigma^2/Pa (Pa |h0 w|^2 / (sigma^2 2^Rs) + 2^-Rs - 1)
    struct OutageTerms
    {
        std::vector<double> los_gains;
        double bob_gain = 0.0;
        double mean_sum = 0.0;
        double var_sum = 0.0;
        double threshold = 0.0;

        double shape() const { return mean_sum * mean_sum / var_sum; }   // f1
        double argument() const { return mean_sum / var_sum * threshold; } // f2
    };

    OutageTerms outage_terms(const CplxVec &w, const RealVec &x, const SystemConfig &cfg);
    // Terms from precomputed |hbar_i w|^2 and |h0 w|^2.
    OutageTerms outage_terms_from_gains(std::vector<double> los_gains, double bob_gain, const SystemConfig &cfg);

    double outage_threshold(double bob_gain, const SystemConfig &cfg);

    // `i` is zero-based.
    EveLinkStats link_stats(const CplxVec &w, const RealVec &x, int i, const SystemConfig &cfg);
    GammaMoments gamma_moments(std::span<const EveLinkStats> stats);
    // P(sum_i |h_i w|^2 <= t) under the matched Gamma law.
    double sum_power_cdf(double t, const GammaMoments &moments);

    double f1(const CplxVec &w, const RealVec &x, const SystemConfig &cfg);
    double f2(const CplxVec &w, const RealVec &x, const SystemConfig &cfg);

    // 1 - P(f1, f2) clamped to [0, 1]; a negative f2 means certain outage.
    double outage_from_shape_argument(double shape, double argument);
    double secrecy_outage_closed_form(const CplxVec &w, const RealVec &x, const SystemConfig &cfg);

    // Closed form with f2 replaced by its Pa -> infinity limit.
    double secrecy_outage_high_power_limit(const CplxVec &w, const RealVec &x, const SystemConfig &cfg);

    /// Fraction of sampled NLoS realisations in outage, i.e. with
    /// sum_i |h_i w|^2 >= threshold. Trials are split into fixed 4096-trial chunks, chunk c
    /// sampled from derive_seed(seed, c); the result does not depend on `threads`.
    double monte_carlo_outage(const CplxVec &w, const RealVec &x, const SystemConfig &cfg, std::int64_t n_trials,
                              std::uint64_t seed, int threads = 0);

    // Samples of sum_i |h_i w|^2, same chunked seeding as monte_carlo_outage.
    std::vector<double> sample_sum_eve_power(const CplxVec &w, const RealVec &x, const SystemConfig &cfg,
                                             std::int64_t n_samples, std::uint64_t seed, int threads = 0);
}

#endif
