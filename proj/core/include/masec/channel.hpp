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

#ifndef MASEC_CHANNEL_HPP
#define MASEC_CHANNEL_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "masec/config.hpp"
#include "masec/types.hpp"

namespace masec
{
    /// Per-antenna movement boxes [F_i, G_i]. Adjacent boxes are separated by exactly dmin,
    /// so clamping each coordinate into its own box always preserves the minimum spacing.
    struct FeasibleRegion
    {
        RealVec lows;
        RealVec highs;

        Eigen::Index size() const { return lows.size(); }
        bool contains(const RealVec &x, double tol = 1e-12) const;
        RealVec midpoints() const { return 0.5 * (lows + highs); }
        bool degenerate() const { return (highs - lows).maxCoeff() <= 0.0; }
    };

    /// Antenna coordinates that lie inside a FeasibleRegion (hence strictly increasing).
    class AntennaPositions
    {
    public:
        // Throws ConfigError if `x` is not inside `region`.
        AntennaPositions(RealVec x, const FeasibleRegion &region);

        const RealVec &values() const { return x_; }
        Eigen::Index size() const { return x_.size(); }

    private:
        friend AntennaPositions project_positions(const RealVec &, const FeasibleRegion &);
        explicit AntennaPositions(RealVec x) : x_(std::move(x)) {}
        RealVec x_;
    };

    /// Transmit beamformer with unit Euclidean norm.
    class Beamformer
    {
    public:
        // Scales `w` to unit norm. Throws std::domain_error for a zero vector.
        static Beamformer normalized(const CplxVec &w);
        // Accepts `w` as is; throws std::domain_error unless | ||w|| - 1 | <= 1e-12.
        static Beamformer unit(CplxVec w);

        const CplxVec &values() const { return w_; }
        Eigen::Index size() const { return w_.size(); }

    private:
        explicit Beamformer(CplxVec w) : w_(std::move(w)) {}
        CplxVec w_;
    };

    struct ChannelRealization
    {
        CplxVec h0;
        std::vector<CplxVec> h_eves;
    };

    // exp(j 2 pi x_n sin(theta) / lambda) for every antenna.
    CplxVec steering_vector(const RealVec &x, double theta, const SystemConfig &cfg);
    // Same phase law with sin(theta) given directly, used for relative-angle arrays.
    CplxVec steering_from_sine(const RealVec &x, double sine, double wavelength);

    CplxVec main_channel(const RealVec &x, const SystemConfig &cfg);

    // Maximum-ratio transmission h0^H / ||h0||.
    Beamformer mrt_beamformer(const RealVec &x, const SystemConfig &cfg);

    /// Rician wiretap channels for one draw of the NLoS parts.
    ///
    /// Uses std::mt19937_64 seeded with `seed` and std::normal_distribution; every complex
    /// entry is (re + j im) / sqrt(2) with re, im drawn in that order. Eavesdroppers are
    /// sampled in index order, antennas in index order within each eavesdropper.
    ChannelRealization sample_wiretap_channels(const RealVec &x, const SystemConfig &cfg, std::uint64_t seed);
    ChannelRealization sample_wiretap_channels(const RealVec &x, const SystemConfig &cfg, std::mt19937_64 &rng);

    double snr_bob(const CplxVec &w, const RealVec &x, const SystemConfig &cfg);
    // sum_i |h_i w|^2 without the Pa / sigma^2 factor.
    double sum_eve_power(const CplxVec &w, const ChannelRealization &channels);

    // Throws ConfigError when L < (N-1) dmin.
    FeasibleRegion feasible_region(const SystemConfig &cfg);

    // Coordinate-wise clamp into [F_i, G_i]; idempotent.
    AntennaPositions project_positions(const RealVec &x_raw, const FeasibleRegion &region);

    // SplitMix64 finaliser applied to (base, stream); gives independent per-worker seeds.
    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);
}

#endif
