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

#ifndef MASEC_TYPES_HPP
#define MASEC_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace masec
{
    using Cplx = std::complex<double>;
    using RealVec = Eigen::VectorXd;
    using CplxVec = Eigen::VectorXcd;
    using CplxMat = Eigen::MatrixXcd;

    inline constexpr double pi = 3.14159265358979323846;

    // Row-vector channel times column beamformer, i.e. h * w without conjugation.
    inline Cplx apply_channel(const CplxVec &h, const CplxVec &w)
    {
        return (h.array() * w.array()).sum();
    }

    // Thrown when a scenario, file or parameter set violates a documented precondition.
    class ConfigError : public std::invalid_argument
    {
    public:
        explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
    };
}

#endif
