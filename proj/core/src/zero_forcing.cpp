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

#include "masec/zero_forcing.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "backtracking.hpp"
#include "masec/outage.hpp"

namespace masec
{
    namespace
    {
        std::string closest_angle_pair(const SystemConfig &cfg)
        {
            std::size_t a = 0, b = 1;
            double best = INFINITY;
            for (std::size_t i = 0; i < cfg.thetas.size(); ++i)
                for (std::size_t j = i + 1; j < cfg.thetas.size(); ++j)
                {
                    const double gap = std::abs(std::sin(cfg.thetas[i]) - std::sin(cfg.thetas[j]));
                    if (gap < best)
                    {
                        best = gap;
                        a = i;
                        b = j;
                    }
                }
            std::ostringstream os;
            os << "theta[" << a + 1 << "] = " << cfg.thetas[a] / pi << " pi and theta[" << b + 1
               << "] = " << cfg.thetas[b] / pi << " pi";
            return os.str();
        }

        double residue_scale(Cplx v)
        {
            return 1e-10 * std::max(1.0, std::abs(v.real()));
        }
    }

    ZfProblem ZfProblem::build(const RealVec &x, const SystemConfig &cfg)
    {
        if (cfg.n_antennas < cfg.n_eves + 1)
            throw ConfigError("zero forcing needs N >= M + 1 (N = " + std::to_string(cfg.n_antennas) +
                              ", M = " + std::to_string(cfg.n_eves) + ")");
        ZfProblem p;
        p.H.resize(x.size(), cfg.n_eves);
        for (int m = 0; m < cfg.n_eves; ++m)
            p.H.col(m) = steering_vector(x, cfg.thetas[m], cfg).conjugate();
        p.h = (main_channel(x, cfg).transpose() * p.H).transpose();
        p.gram = p.H.adjoint() * p.H;

        const Eigen::SelfAdjointEigenSolver<CplxMat> eig(p.gram, Eigen::EigenvaluesOnly);
        const double lmin = eig.eigenvalues().minCoeff();
        const double lmax = eig.eigenvalues().maxCoeff();
        if (!(lmin > 0.0) || lmax / lmin > zf_condition_limit)
        {
            std::ostringstream os;
            os << "eavesdropper directions are not separable at these positions: " << closest_angle_pair(cfg)
               << " (condition number " << (lmin > 0.0 ? lmax / lmin : INFINITY) << ")";
            throw SingularGeometryError(os.str());
        }

        double sc = 0.0, sc2 = 0.0;
        for (int i = 0; i < cfg.n_eves; ++i)
        {
            const double c = cfg.betas[i] / (cfg.ks[i] + 1.0);
            sc += c;
            sc2 += c * c;
        }
        p.psi1 = sc * sc / sc2;
        p.psi2 = sc / sc2 * cfg.sigma2 / cfg.pa;
        return p;
    }

    double ZfProblem::theta() const
    {
        const CplxVec v = gram.ldlt().solve(h.conjugate());
        return std::max(0.0, (h.transpose() * v)(0).real());
    }

    double theta(const RealVec &x, const SystemConfig &cfg)
    {
        return ZfProblem::build(x, cfg).theta();
    }

    Beamformer zf_beamformer(const RealVec &x, const SystemConfig &cfg)
    {
        const auto p = ZfProblem::build(x, cfg);
        const CplxVec h0h = main_channel(x, cfg).conjugate();
        const CplxVec projected = h0h - p.H * p.gram.ldlt().solve(p.H.adjoint() * h0h);
        if (projected.norm() <= 1e-9 * h0h.norm())
            throw SingularGeometryError("main channel lies in the eavesdropper span; zero forcing leaves no gain");
        return Beamformer::normalized(projected);
    }

    RealVec grad_theta(const RealVec &x, const SystemConfig &cfg)
    {
        const auto p = ZfProblem::build(x, cfg);
        const auto ldlt = p.gram.ldlt();
        const CplxVec v = ldlt.solve(p.h.conjugate());            // gram^-1 h^H
        const CplxVec hg = v.conjugate();                         // (h gram^-1)^T, gram Hermitian
        const double k = 2.0 * pi / cfg.wavelength;
        const double s0 = std::sin(cfg.theta0);
        const double amp = std::sqrt(cfg.beta0);

        RealVec grad(x.size());
        for (Eigen::Index n = 0; n < x.size(); ++n)
        {
            CplxVec dh(cfg.n_eves);
            CplxMat dH = CplxMat::Zero(x.size(), cfg.n_eves);
            for (int m = 0; m < cfg.n_eves; ++m)
            {
                const double sm = std::sin(cfg.thetas[m]);
                dh(m) = amp * k * (s0 - sm) * Cplx(0.0, 1.0) * std::exp(Cplx(0.0, k * x(n) * (s0 - sm)));
                dH(n, m) = Cplx(0.0, -k * sm) * std::exp(Cplx(0.0, -k * x(n) * sm));
            }
            const CplxMat dgram = dH.adjoint() * p.H + p.H.adjoint() * dH;
            const Cplx total = (dh.transpose() * v)(0) + (hg.transpose() * dh.conjugate())(0) -
                               (v.adjoint() * dgram * v)(0);
            if (std::abs(total.imag()) > residue_scale(total))
                throw std::logic_error("grad_theta: assembled derivative is not real");
            grad(n) = total.real();
        }
        return grad;
    }

    PgdResult pgd_solve(const RealVec &x0, const SystemConfig &cfg, const OptimizerParams &params,
                        std::vector<PgdTraceEntry> *trace)
    {
        params.validate();
        const FeasibleRegion region = feasible_region(cfg);
        RealVec x = project_positions(x0, region).values();
        double value = theta(x, cfg);
        if (trace)
            trace->push_back({0, params.delta0, value, value, true, x});

        auto neg_theta = [&](const RealVec &c) { return -theta(c, cfg); };
        auto project = [&](const RealVec &c) { return RealVec(project_positions(c, region).values()); };

        int it = 0;
        bool converged = false;
        while (it < params.max_outer)
        {
            ++it;
            const double previous = value;
            // Ascent on -theta gives the mirrored model theta + <grad, dx> + ||dx||^2 / delta.
            const auto step = detail::backtracking_ascent(x, -value, RealVec(-grad_theta(x, cfg)), params.delta0,
                                                          params.chi, neg_theta, project);
            x = step.point;
            value = -step.value;
            if (trace)
                trace->push_back({it, step.delta, value, -step.model, step.accepted, x});
            if (previous - value < params.obj_tol)
            {
                converged = true;
                break;
            }
        }
        return {x, value, it, converged};
    }

    void write_trace(std::ostream &out, std::span<const PgdTraceEntry> trace)
    {
        const auto old = out.precision(17);
        out << "iteration,delta,theta,model,accepted\n";
        for (const auto &e : trace)
            out << e.iteration << ',' << e.delta << ',' << e.theta << ',' << e.model << ',' << (e.accepted ? 1 : 0)
                << '\n';
        out.precision(old);
    }

    double zf_outage(const RealVec &x, const SystemConfig &cfg)
    {
        const auto p = ZfProblem::build(x, cfg);
        const double bob_gain = std::max(0.0, cfg.beta0 * static_cast<double>(x.size()) - p.theta());
        const double two_rs = std::exp2(cfg.rs);
        const double argument = p.psi2 * (cfg.pa * bob_gain / (cfg.sigma2 * two_rs) + 1.0 / two_rs - 1.0);
        return outage_from_shape_argument(p.psi1, argument);
    }
}
