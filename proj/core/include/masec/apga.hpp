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

#ifndef MASEC_APGA_HPP
#define MASEC_APGA_HPP

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "masec/channel.hpp"
#include "masec/config.hpp"
#include "masec/gamma_fit.hpp"
#include "masec/types.hpp"

namespace masec
{
    struct OptimizerParams
    {
        double delta0 = 1.0;   ///< initial step, restored at the start of every block
        double chi = 0.5;      ///< step shrink factor in (0, 1)
        int max_outer = 2000;  ///< outer iteration cap
        double obj_tol = 1e-8; ///< stop once an outer iteration improves the objective by less
        double tau = 0.01;     ///< bisection accuracy on eps

        void validate() const;
    };

    /// Position-gradient building blocks for |a_d(x) w|^2, where a_d is the unit steering
    /// vector with sine s_d. With w = u + j z:
    ///   C = u u^T + z z^T,  D = u z^T - z u^T,
    ///   g_d = cos(k s_d x),  q_d = -sin(k s_d x),
    ///   W_d = diag(k s_d sin(k s_d x)),  S_d = diag(k s_d cos(k s_d x)),  k = 2 pi / lambda,
    /// and grad_x |a_d w|^2 = -W_d (2 C g_d + 2 D q_d) - S_d (2 C q_d - 2 D g_d).
    struct GradientWorkspace
    {
        RealVec u;
        RealVec z;
        Eigen::MatrixXd C;
        Eigen::MatrixXd D;
        std::vector<RealVec> g;
        std::vector<RealVec> q;
        std::vector<RealVec> w_diag;
        std::vector<RealVec> s_diag;

        GradientWorkspace(const CplxVec &w, const RealVec &x, std::span<const double> sines, double wavelength);
        // Directions ordered Bob first, then eavesdroppers 1..M.
        GradientWorkspace(const CplxVec &w, const RealVec &x, const SystemConfig &cfg);

        RealVec gain_gradient(std::size_t direction) const;
    };

    /// f3 = A T - kappa A^2 - rho B, with A, B and T the mean sum, variance sum and
    /// threshold of OutageTerms. Equals (f2 - kappa f1 - rho) * B with B > 0.
    double f3(const CplxVec &w, const RealVec &x, const SurrogateCoefficients &coeffs, const SystemConfig &cfg);
    double f3(const CplxVec &w, const RealVec &x, double eps, const LinearFitTable &table, const SystemConfig &cfg);

    // Conjugate-Wirtinger gradient df3/dw*, i.e. half the gradient in (Re w, Im w).
    CplxVec grad_w_f3(const CplxVec &w, const RealVec &x, const SurrogateCoefficients &coeffs, const SystemConfig &cfg);
    RealVec grad_x_f3(const CplxVec &w, const RealVec &x, const SurrogateCoefficients &coeffs, const SystemConfig &cfg);

    // f3 with w tied to MRT(x), so |h0 w|^2 = beta0 N and only x varies.
    double f3_mrt(const RealVec &x, const SurrogateCoefficients &coeffs, const SystemConfig &cfg);
    RealVec grad_x_f3_mrt(const RealVec &x, const SurrogateCoefficients &coeffs, const SystemConfig &cfg);

    enum class UpdateBlocks
    {
        joint,           ///< alternate w and x
        beamformer_only, ///< x held fixed (need not lie in the feasible region)
        positions_mrt    ///< w = MRT(x), ascend over x only
    };

    struct ApgaTraceEntry
    {
        int iteration;
        char block; ///< 'w' or 'x'
        double delta;
        double f3;
        double model; ///< quadratic model value the accepted step was checked against
        bool accepted;
    };

    struct ApgaResult
    {
        Beamformer w;
        RealVec x;
        double f3;
        int iterations;
        bool converged;
    };

    /// Alternating projected gradient ascent on f3 for a fixed eps.
    ///
    /// Each outer iteration takes one backtracked w-step (gradient step then renormalise)
    /// and one backtracked x-step (gradient step then clamp into the feasible region).
    /// The objective sequence is nondecreasing.
    ApgaResult apga_solve(const Beamformer &w0, const RealVec &x0, double eps, const LinearFitTable &table,
                          const SystemConfig &cfg, const OptimizerParams &params,
                          UpdateBlocks blocks = UpdateBlocks::joint, std::vector<ApgaTraceEntry> *trace = nullptr);

    void write_trace(std::ostream &out, std::span<const ApgaTraceEntry> trace);

    struct ConfidenceBisection
    {
        double lo;  ///< largest eps certified feasible (0 if none)
        double hi;  ///< smallest eps found infeasible
        int rounds;
        bool any_feasible;
    };

    /// Bisection on eps in [0, 1] starting at 0.5 until hi - lo <= tau.
    /// eps above `max_eps` is reported infeasible without calling `feasible`.
    ConfidenceBisection bisect_confidence(double max_eps, double tau, const std::function<bool(double)> &feasible);

    struct BisectionResult
    {
        double eps;
        Beamformer w;
        RealVec x;
        double p_out;     ///< closed-form outage at (w, x)
        bool feasible;    ///< false if no tested eps was certified
        int rounds;
        int iterations;   ///< APGA outer iterations summed over rounds
    };

    /// Bisection over eps with APGA feasibility checks (max f3 > 0), warm-starting each
    /// round from the previous round's iterate. Returns the iterate of the last feasible
    /// round or, if none was feasible, the last iterate with feasible = false.
    BisectionResult bisection_outage_min(const SystemConfig &cfg, const LinearFitTable &table,
                                         const OptimizerParams &params, const Beamformer &w0, const RealVec &x0,
                                         UpdateBlocks blocks = UpdateBlocks::joint);

    /// maximize P(shape(v), argument(v)) over the box [lower, upper] by the same
    /// bisection, with projected gradient ascent on argument - kappa shape - rho per eps.
    struct LevelProblem
    {
        std::function<double(const RealVec &)> shape;
        std::function<double(const RealVec &)> argument;
        std::function<RealVec(const RealVec &)> shape_gradient;
        std::function<RealVec(const RealVec &)> argument_gradient;
        RealVec lower;
        RealVec upper;
    };

    struct LevelResult
    {
        double eps;
        RealVec v;
        double objective; ///< P(shape(v), argument(v))
        int rounds;
    };

    LevelResult maximize_incomplete_gamma(const LevelProblem &problem, const LinearFitTable &table,
                                          const OptimizerParams &params, const RealVec &v0);
}

#endif
