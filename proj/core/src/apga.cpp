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

#include "masec/apga.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "backtracking.hpp"
#include "masec/outage.hpp"

namespace masec
{
    void OptimizerParams::validate() const
    {
        if (!(delta0 > 0.0))
            throw ConfigError("optimizer: delta0 must be > 0");
        if (!(chi > 0.0 && chi < 1.0))
            throw ConfigError("optimizer: chi must be in (0, 1)");
        if (max_outer < 1)
            throw ConfigError("optimizer: max_outer must be >= 1");
        if (!(obj_tol >= 0.0))
            throw ConfigError("optimizer: obj_tol must be >= 0");
        if (!(tau > 0.0 && tau < 1.0))
            throw ConfigError("optimizer: tau must be in (0, 1)");
    }

    GradientWorkspace::GradientWorkspace(const CplxVec &w, const RealVec &x, std::span<const double> sines,
                                         double wavelength)
        : u(w.real()), z(w.imag())
    {
        C = u * u.transpose() + z * z.transpose();
        D = u * z.transpose() - z * u.transpose();
        const double k = 2.0 * pi / wavelength;
        for (double s : sines)
        {
            const RealVec phase = (k * s) * x;
            const RealVec c = phase.array().cos();
            const RealVec sn = phase.array().sin();
            g.push_back(c);
            q.push_back(-sn);
            w_diag.push_back((k * s) * sn);
            s_diag.push_back((k * s) * c);
        }
    }

    namespace
    {
        std::vector<double> config_sines(const SystemConfig &cfg)
        {
            std::vector<double> s{std::sin(cfg.theta0)};
            for (double t : cfg.thetas)
                s.push_back(std::sin(t));
            return s;
        }

        // sin(theta_i) - sin(theta_0): with w = MRT(x) the eavesdropper gains reduce to
        // |a(x; s_i - s_0)^T 1|^2 / N.
        std::vector<double> relative_sines(const SystemConfig &cfg)
        {
            std::vector<double> s;
            const double s0 = std::sin(cfg.theta0);
            for (double t : cfg.thetas)
                s.push_back(std::sin(t) - s0);
            return s;
        }

        CplxVec uniform_weights(Eigen::Index n)
        {
            return CplxVec::Constant(n, Cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
        }

        OutageTerms mrt_terms(const RealVec &x, const SystemConfig &cfg)
        {
            const CplxVec ones = uniform_weights(x.size());
            std::vector<double> gains;
            for (double s : relative_sines(cfg))
                gains.push_back(std::norm(apply_channel(steering_from_sine(x, s, cfg.wavelength), ones)));
            return outage_terms_from_gains(std::move(gains), cfg.beta0 * static_cast<double>(x.size()), cfg);
        }

        double surrogate_value(const OutageTerms &t, const SurrogateCoefficients &c)
        {
            return t.mean_sum * t.threshold - c.kappa * t.mean_sum * t.mean_sum - c.rho * t.var_sum;
        }

        // df3/da_i for every eavesdropper, holding b fixed.
        std::vector<double> gain_weights(const OutageTerms &t, const SurrogateCoefficients &coeffs,
                                         const SystemConfig &cfg)
        {
            std::vector<double> out;
            for (int i = 0; i < cfg.n_eves; ++i)
            {
                const double c = cfg.betas[i] / (cfg.ks[i] + 1.0);
                const double k = cfg.ks[i];
                out.push_back(t.threshold * c * k - 2.0 * coeffs.kappa * t.mean_sum * c * k -
                              2.0 * coeffs.rho * c * c * k);
            }
            return out;
        }
    }

    RealVec GradientWorkspace::gain_gradient(std::size_t d) const
    {
        const RealVec cg = C * g[d];
        const RealVec cq = C * q[d];
        const RealVec dg = D * g[d];
        const RealVec dq = D * q[d];
        return -(w_diag[d].array() * (2.0 * cg + 2.0 * dq).array()).matrix() -
               (s_diag[d].array() * (2.0 * cq - 2.0 * dg).array()).matrix();
    }

    GradientWorkspace::GradientWorkspace(const CplxVec &w, const RealVec &x, const SystemConfig &cfg)
        : GradientWorkspace(w, x, config_sines(cfg), cfg.wavelength)
    {
    }

    double f3(const CplxVec &w, const RealVec &x, const SurrogateCoefficients &coeffs, const SystemConfig &cfg)
    {
        return surrogate_value(outage_terms(w, x, cfg), coeffs);
    }

    double f3(const CplxVec &w, const RealVec &x, double eps, const LinearFitTable &table, const SystemConfig &cfg)
    {
        return f3(w, x, surrogate_lookup(table, eps), cfg);
    }

    CplxVec grad_w_f3(const CplxVec &w, const RealVec &x, const SurrogateCoefficients &coeffs,
                      const SystemConfig &cfg)
    {
        const auto t = outage_terms(w, x, cfg);
        const auto weights = gain_weights(t, coeffs, cfg);
        CplxVec grad = CplxVec::Zero(w.size());
        for (int i = 0; i < cfg.n_eves; ++i)
        {
            const CplxVec h = steering_vector(x, cfg.thetas[i], cfg);
            grad += weights[static_cast<std::size_t>(i)] * (h.conjugate() * apply_channel(h, w));
        }
        const CplxVec h0 = main_channel(x, cfg);
        grad += (t.mean_sum / std::exp2(cfg.rs)) * (h0.conjugate() * apply_channel(h0, w));
        return grad;
    }

    RealVec grad_x_f3(const CplxVec &w, const RealVec &x, const SurrogateCoefficients &coeffs,
                      const SystemConfig &cfg)
    {
        const auto t = outage_terms(w, x, cfg);
        const auto weights = gain_weights(t, coeffs, cfg);
        const GradientWorkspace ws(w, x, cfg);
        RealVec grad = (t.mean_sum * cfg.beta0 / std::exp2(cfg.rs)) * ws.gain_gradient(0);
        for (int i = 0; i < cfg.n_eves; ++i)
            grad += weights[static_cast<std::size_t>(i)] * ws.gain_gradient(static_cast<std::size_t>(i) + 1);
        return grad;
    }

    double f3_mrt(const RealVec &x, const SurrogateCoefficients &coeffs, const SystemConfig &cfg)
    {
        return surrogate_value(mrt_terms(x, cfg), coeffs);
    }

    RealVec grad_x_f3_mrt(const RealVec &x, const SurrogateCoefficients &coeffs, const SystemConfig &cfg)
    {
        const auto t = mrt_terms(x, cfg);
        const auto weights = gain_weights(t, coeffs, cfg);
        const GradientWorkspace ws(uniform_weights(x.size()), x, relative_sines(cfg), cfg.wavelength);
        RealVec grad = RealVec::Zero(x.size());
        for (int i = 0; i < cfg.n_eves; ++i)
            grad += weights[static_cast<std::size_t>(i)] * ws.gain_gradient(static_cast<std::size_t>(i));
        return grad;
    }

    ApgaResult apga_solve(const Beamformer &w0, const RealVec &x0, double eps, const LinearFitTable &table,
                          const SystemConfig &cfg, const OptimizerParams &params, UpdateBlocks blocks,
                          std::vector<ApgaTraceEntry> *trace)
    {
        params.validate();
        const auto coeffs = surrogate_lookup(table, eps);
        const bool move_w = blocks != UpdateBlocks::positions_mrt;
        const bool move_x = blocks != UpdateBlocks::beamformer_only;
        const FeasibleRegion region = feasible_region(cfg);

        CplxVec w = w0.values();
        RealVec x = x0;
        if (move_x)
            x = project_positions(x, region).values();
        if (!move_w)
            w = mrt_beamformer(x, cfg).values();

        auto value_wx = [&](const CplxVec &wv, const RealVec &xv) {
            return move_w ? f3(wv, xv, coeffs, cfg) : f3_mrt(xv, coeffs, cfg);
        };
        double value = value_wx(w, x);

        int it = 0;
        bool converged = false;
        while (it < params.max_outer)
        {
            ++it;
            const double previous = value;
            if (move_w)
            {
                const auto step = detail::backtracking_ascent(
                    w, value, grad_w_f3(w, x, coeffs, cfg), params.delta0, params.chi,
                    [&](const CplxVec &c) { return f3(c, x, coeffs, cfg); },
                    [](const CplxVec &c) { return CplxVec(Beamformer::normalized(c).values()); });
                w = step.point;
                value = step.value;
                if (trace)
                    trace->push_back({it, 'w', step.delta, value, step.model, step.accepted});
            }
            if (move_x)
            {
                const RealVec grad = move_w ? grad_x_f3(w, x, coeffs, cfg) : grad_x_f3_mrt(x, coeffs, cfg);
                const auto step = detail::backtracking_ascent(
                    x, value, grad, params.delta0, params.chi, [&](const RealVec &c) { return value_wx(w, c); },
                    [&](const RealVec &c) { return RealVec(project_positions(c, region).values()); });
                x = step.point;
                value = step.value;
                if (trace)
                    trace->push_back({it, 'x', step.delta, value, step.model, step.accepted});
            }
            if (value - previous < params.obj_tol)
            {
                converged = true;
                break;
            }
        }
        if (!move_w)
            w = mrt_beamformer(x, cfg).values();
        return {Beamformer::normalized(w), x, value, it, converged};
    }

    void write_trace(std::ostream &out, std::span<const ApgaTraceEntry> trace)
    {
        const auto old = out.precision(17);
        out << "iteration,block,delta,f3,model,accepted\n";
        for (const auto &e : trace)
            out << e.iteration << ',' << e.block << ',' << e.delta << ',' << e.f3 << ',' << e.model << ','
                << (e.accepted ? 1 : 0) << '\n';
        out.precision(old);
    }

    ConfidenceBisection bisect_confidence(double max_eps, double tau, const std::function<bool(double)> &feasible)
    {
        if (!(tau > 0.0 && tau < 1.0))
            throw ConfigError("bisection: tau must be in (0, 1)");
        ConfidenceBisection b{0.0, 1.0, 0, false};
        double eps = 0.5;
        while (b.hi - b.lo > tau)
        {
            ++b.rounds;
            // The table cannot certify probabilities beyond its last grid point.
            if (eps <= max_eps && feasible(eps))
            {
                b.lo = eps;
                b.any_feasible = true;
            }
            else
                b.hi = eps;
            eps = 0.5 * (b.lo + b.hi);
        }
        return b;
    }

    BisectionResult bisection_outage_min(const SystemConfig &cfg, const LinearFitTable &table,
                                         const OptimizerParams &params, const Beamformer &w0, const RealVec &x0,
                                         UpdateBlocks blocks)
    {
        params.validate();
        Beamformer w = w0;
        RealVec x = x0;
        Beamformer best_w = w0;
        RealVec best_x = x0;
        int iterations = 0;

        const auto b = bisect_confidence(table.max_eps(), params.tau, [&](double eps) {
            const auto r = apga_solve(w, x, eps, table, cfg, params, blocks);
            iterations += r.iterations;
            w = r.w;
            x = r.x;
            if (r.f3 > 0.0)
            {
                best_w = r.w;
                best_x = r.x;
                return true;
            }
            return false;
        });

        BisectionResult out{b.lo, b.any_feasible ? best_w : w, b.any_feasible ? best_x : x, 1.0,
                            b.any_feasible, b.rounds, iterations};
        out.p_out = secrecy_outage_closed_form(out.w.values(), out.x, cfg);
        return out;
    }

    LevelResult maximize_incomplete_gamma(const LevelProblem &problem, const LinearFitTable &table,
                                          const OptimizerParams &params, const RealVec &v0)
    {
        params.validate();
        auto project = [&](const RealVec &v) { return RealVec(v.cwiseMax(problem.lower).cwiseMin(problem.upper)); };
        RealVec v = project(v0);
        RealVec best = v;

        const auto b = bisect_confidence(table.max_eps(), params.tau, [&](double eps) {
            const auto c = surrogate_lookup(table, eps);
            auto objective = [&](const RealVec &p) { return problem.argument(p) - c.kappa * problem.shape(p) - c.rho; };
            double value = objective(v);
            for (int it = 0; it < params.max_outer; ++it)
            {
                const RealVec grad = problem.argument_gradient(v) - c.kappa * problem.shape_gradient(v);
                const auto step = detail::backtracking_ascent(v, value, grad, params.delta0, params.chi, objective, project);
                const double gain = step.value - value;
                v = step.point;
                value = step.value;
                if (gain < params.obj_tol)
                    break;
            }
            if (value > 0.0)
            {
                best = v;
                return true;
            }
            return false;
        });

        const RealVec &out = b.any_feasible ? best : v;
        return {b.lo, out, 1.0 - outage_from_shape_argument(problem.shape(out), problem.argument(out)), b.rounds};
    }
}
