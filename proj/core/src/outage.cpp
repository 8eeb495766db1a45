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

#include "masec/outage.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "masec/channel.hpp"
#include "masec/incomplete_gamma.hpp"
#include "parallel.hpp"

namespace masec
{
    namespace
    {
        constexpr std::int64_t mc_chunk = 4096;
    }

    double outage_threshold(double bob_gain, const SystemConfig &cfg)
    {
        const double two_rs = std::exp2(cfg.rs);
        return cfg.sigma2 / cfg.pa * (cfg.pa * bob_gain / (cfg.sigma2 * two_rs) + 1.0 / two_rs - 1.0);
    }

    OutageTerms outage_terms_from_gains(std::vector<double> los_gains, double bob_gain, const SystemConfig &cfg)
    {
        OutageTerms t;
        t.los_gains = std::move(los_gains);
        t.bob_gain = bob_gain;
        for (int i = 0; i < cfg.n_eves; ++i)
        {
            const double c = cfg.betas[i] / (cfg.ks[i] + 1.0);
            const double a = t.los_gains[static_cast<std::size_t>(i)];
            t.mean_sum += c * (cfg.ks[i] * a + 1.0);
            t.var_sum += c * c * (2.0 * cfg.ks[i] * a + 1.0);
        }
        t.threshold = outage_threshold(bob_gain, cfg);
        return t;
    }

    OutageTerms outage_terms(const CplxVec &w, const RealVec &x, const SystemConfig &cfg)
    {
        std::vector<double> gains(static_cast<std::size_t>(cfg.n_eves));
        for (int i = 0; i < cfg.n_eves; ++i)
            gains[static_cast<std::size_t>(i)] = std::norm(apply_channel(steering_vector(x, cfg.thetas[i], cfg), w));
        const double bob = std::norm(apply_channel(main_channel(x, cfg), w));
        return outage_terms_from_gains(std::move(gains), bob, cfg);
    }

    EveLinkStats link_stats(const CplxVec &w, const RealVec &x, int i, const SystemConfig &cfg)
    {
        if (i < 0 || i >= cfg.n_eves)
            throw std::out_of_range("link_stats: eavesdropper index out of range");
        const double k = cfg.ks[i];
        const double beta = cfg.betas[i];
        const double gain = std::norm(apply_channel(steering_vector(x, cfg.thetas[i], cfg), w));
        EveLinkStats s{};
        s.z_tilde = k * beta * gain / (k + 1.0) + beta / (k + 1.0);
        s.k_tilde = k * gain;
        s.m_tilde = (s.k_tilde + 1.0) * (s.k_tilde + 1.0) / (2.0 * s.k_tilde + 1.0);
        return s;
    }

    GammaMoments gamma_moments(std::span<const EveLinkStats> stats)
    {
        if (stats.empty())
            throw std::invalid_argument("gamma_moments: need at least one eavesdropper");
        double mean = 0.0;
        double var = 0.0;
        for (const auto &s : stats)
        {
            mean += s.z_tilde;
            var += s.z_tilde * s.z_tilde / s.m_tilde;
        }
        return {mean * mean / var, var / mean};
    }

    double sum_power_cdf(double t, const GammaMoments &moments)
    {
        return regularized_lower_gamma(moments.mu, t / moments.vartheta);
    }

    double f1(const CplxVec &w, const RealVec &x, const SystemConfig &cfg)
    {
        return outage_terms(w, x, cfg).shape();
    }

    double f2(const CplxVec &w, const RealVec &x, const SystemConfig &cfg)
    {
        return outage_terms(w, x, cfg).argument();
    }

    double outage_from_shape_argument(double shape, double argument)
    {
        return std::clamp(1.0 - regularized_lower_gamma(shape, argument), 0.0, 1.0);
    }

    double secrecy_outage_closed_form(const CplxVec &w, const RealVec &x, const SystemConfig &cfg)
    {
        const auto t = outage_terms(w, x, cfg);
        return outage_from_shape_argument(t.shape(), t.argument());
    }

    double secrecy_outage_high_power_limit(const CplxVec &w, const RealVec &x, const SystemConfig &cfg)
    {
        const auto t = outage_terms(w, x, cfg);
        const double limit_argument = t.mean_sum / t.var_sum * t.bob_gain / std::exp2(cfg.rs);
        return outage_from_shape_argument(t.shape(), limit_argument);
    }

    std::vector<double> sample_sum_eve_power(const CplxVec &w, const RealVec &x, const SystemConfig &cfg,
                                             std::int64_t n_samples, std::uint64_t seed, int threads)
    {
        if (n_samples < 1)
            throw std::invalid_argument("sample count must be >= 1");
        std::vector<double> out(static_cast<std::size_t>(n_samples));
        const auto n_chunks = static_cast<std::size_t>((n_samples + mc_chunk - 1) / mc_chunk);
        detail::run_jobs(n_chunks, threads, [&](std::size_t c) {
            std::mt19937_64 rng(derive_seed(seed, c));
            const auto begin = static_cast<std::int64_t>(c) * mc_chunk;
            const auto end = std::min(n_samples, begin + mc_chunk);
            for (auto k = begin; k < end; ++k)
                out[static_cast<std::size_t>(k)] = sum_eve_power(w, sample_wiretap_channels(x, cfg, rng));
        });
        return out;
    }

    double monte_carlo_outage(const CplxVec &w, const RealVec &x, const SystemConfig &cfg, std::int64_t n_trials,
                              std::uint64_t seed, int threads)
    {
        if (n_trials < 1)
            throw std::invalid_argument("monte_carlo_outage: n_trials must be >= 1");
        const double threshold = outage_threshold(std::norm(apply_channel(main_channel(x, cfg), w)), cfg);
        const auto samples = sample_sum_eve_power(w, x, cfg, n_trials, seed, threads);
        const auto outages = std::count_if(samples.begin(), samples.end(), [&](double s) { return s >= threshold; });
        return static_cast<double>(outages) / static_cast<double>(n_trials);
    }
}
