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

#ifndef MASEC_ZERO_FORCING_HPP
#define MASEC_ZERO_FORCING_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "masec/apga.hpp"
#include "masec/channel.hpp"
#include "masec/config.hpp"
#include "masec/types.hpp"

namespace masec
{
    /// Eavesdropper steering directions too close to be separated, or a main channel
    /// lying inside their span.
    class SingularGeometryError : public ConfigError
    {
    public:
        using ConfigError::ConfigError;
    };

    inline constexpr double zf_condition_limit = 1e12;

    /// Null-steering quantities at one antenna placement.
    ///
    /// H is N x M with column m the conjugated LoS steering vector of eavesdropper m, so
    /// hbar_m w = (H^H w)_m. h = h0 H, gram = H^H H, and
    ///   psi1 = (sum c_i)^2 / sum c_i^2,   psi2 = sum c_i / sum c_i^2 * sigma^2 / Pa
    /// with c_i = beta_i / (K_i + 1).
    struct ZfProblem
    {
        CplxMat H;
        CplxVec h; ///< stored as a column; the row vector h0 H transposed
        CplxMat gram;
        double psi1;
        double psi2;

        // Throws ConfigError when N < M + 1 and SingularGeometryError when cond(gram) > 1e12.
        static ZfProblem build(const RealVec &x, const SystemConfig &cfg);

        // h gram^-1 h^H, i.e. the share of beta0 N lost to null steering.
        double theta() const;
    };

    /// Unit-norm P h0^H with P = I - H (H^H H)^-1 H^H.
    Beamformer zf_beamformer(const RealVec &x, const SystemConfig &cfg);

    double theta(const RealVec &x, const SystemConfig &cfg);

    /// d theta / dx. Per coordinate n the derivative is assembled as
    ///   dh v + h gram^-1 dh^H - v^H (dH^H H + H^H dH) v,  v = gram^-1 h^H,
    /// where dH has the single nonzero row n. The imaginary residue is checked against
    /// 1e-10 (relative) before being dropped.
    RealVec grad_theta(const RealVec &x, const SystemConfig &cfg);

    struct PgdTraceEntry
    {
        int iteration;
        double delta;
        double theta;
        double model;
        bool accepted;
        RealVec x;
    };

    struct PgdResult
    {
        RealVec x;
        double theta;
        int iterations;
        bool converged;
    };

    /// Projected gradient descent on theta over the feasible region with backtracking
    /// against theta(x) + <grad, dx> + ||dx||^2 / delta.
    PgdResult pgd_solve(const RealVec &x0, const SystemConfig &cfg, const OptimizerParams &params,
                        std::vector<PgdTraceEntry> *trace = nullptr);

    void write_trace(std::ostream &out, std::span<const PgdTraceEntry> trace);

    /// 1 - P(psi1, psi2 (Pa |h0 w_ZF|^2 / (sigma^2 2^Rs) + 2^-Rs - 1)) with |h0 w_ZF|^2 = beta0 N - theta.
    double zf_outage(const RealVec &x, const SystemConfig &cfg);
}

#endif
