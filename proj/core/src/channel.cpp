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

#include "masec/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace masec
{
    bool FeasibleRegion::contains(const RealVec &x, double tol) const
    {
        if (x.size() != lows.size())
            return false;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            if (x[i] < lows[i] - tol || x[i] > highs[i] + tol)
                return false;
        return true;
    }

    AntennaPositions::AntennaPositions(RealVec x, const FeasibleRegion &region) : x_(std::move(x))
    {
        if (!region.contains(x_))
            throw ConfigError("antenna positions lie outside the feasible region");
    }

    Beamformer Beamformer::normalized(const CplxVec &w)
    {
        const double n = w.norm();
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::domain_error("cannot normalise a zero or non-finite beamformer");
        return Beamformer(w / n);
    }

    Beamformer Beamformer::unit(CplxVec w)
    {
        if (std::abs(w.norm() - 1.0) > 1e-12)
            throw std::domain_error("beamformer must have unit norm");
        return Beamformer(std::move(w));
    }

    CplxVec steering_from_sine(const RealVec &x, double sine, double wavelength)
    {
        const double k = 2.0 * pi / wavelength * sine;
        CplxVec a(x.size());
        for (Eigen::Index n = 0; n < x.size(); ++n)
            a[n] = std::polar(1.0, k * x[n]);
        return a;
    }

    CplxVec steering_vector(const RealVec &x, double theta, const SystemConfig &cfg)
    {
        return steering_from_sine(x, std::sin(theta), cfg.wavelength);
    }

    CplxVec main_channel(const RealVec &x, const SystemConfig &cfg)
    {
        return std::sqrt(cfg.beta0) * steering_vector(x, cfg.theta0, cfg);
    }

    Beamformer mrt_beamformer(const RealVec &x, const SystemConfig &cfg)
    {
        return Beamformer::normalized(main_channel(x, cfg).conjugate());
    }

    ChannelRealization sample_wiretap_channels(const RealVec &x, const SystemConfig &cfg, std::mt19937_64 &rng)
    {
        std::normal_distribution<double> normal(0.0, 1.0);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        ChannelRealization out;
        out.h0 = main_channel(x, cfg);
        out.h_eves.reserve(static_cast<std::size_t>(cfg.n_eves));
        for (int i = 0; i < cfg.n_eves; ++i)
        {
            const double k = cfg.ks[i];
            const double beta = cfg.betas[i];
            const double los = std::sqrt(k * beta / (k + 1.0));
            const double nlos = std::sqrt(beta / (k + 1.0));
            CplxVec h = los * steering_vector(x, cfg.thetas[i], cfg);
            for (Eigen::Index n = 0; n < h.size(); ++n)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                h[n] += nlos * inv_sqrt2 * Cplx(re, im);
            }
            out.h_eves.push_back(std::move(h));
        }
        return out;
    }

    ChannelRealization sample_wiretap_channels(const RealVec &x, const SystemConfig &cfg, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        return sample_wiretap_channels(x, cfg, rng);
    }

    double snr_bob(const CplxVec &w, const RealVec &x, const SystemConfig &cfg)
    {
        return cfg.pa * std::norm(apply_channel(main_channel(x, cfg), w)) / cfg.sigma2;
    }

    double sum_eve_power(const CplxVec &w, const ChannelRealization &channels)
    {
        double total = 0.0;
        for (const auto &h : channels.h_eves)
            total += std::norm(apply_channel(h, w));
        return total;
    }

    FeasibleRegion feasible_region(const SystemConfig &cfg)
    {
        if (cfg.n_antennas < 2)
            throw ConfigError("n_antennas must be >= 2");
        const int n = cfg.n_antennas;
        double width = (cfg.span - (n - 1) * cfg.dmin) / n;
        if (width < 0.0)
        {
            if (!cfg.degenerate_span())
                throw ConfigError("infeasible geometry: span L is shorter than (N-1)*dmin");
            width = 0.0;
        }
        FeasibleRegion region{RealVec(n), RealVec(n)};
        for (int i = 0; i < n; ++i)
        {
            region.lows[i] = width * i + i * cfg.dmin;
            region.highs[i] = width * (i + 1) + i * cfg.dmin;
        }
        return region;
    }

    AntennaPositions project_positions(const RealVec &x_raw, const FeasibleRegion &region)
    {
        if (x_raw.size() != region.size())
            throw ConfigError("position vector length does not match the number of antennas");
        return AntennaPositions(x_raw.cwiseMax(region.lows).cwiseMin(region.highs));
    }

    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream)
    {
        std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
}
