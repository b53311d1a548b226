// SPDX-License-Identifier: Apache-2.0
//
// cplc-sim: contactless power-line communication channel simulator
// Copyright (C) 2026 The cplc-sim authors
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

#include "cplc/cable.hpp"
#include "cplc/constants.hpp"
#include "cplc/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace cplc
{
    using constants::pi;

    void CableSpec::validate() const
    {
        for (double v : {a_m, b_m, c_m, x_m, z_m})
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument("cable geometry values must be positive");
        if (!(a_m > b_m && b_m > c_m && c_m > x_m))
            throw std::invalid_argument("cable geometry must satisfy a > b > c > x");
        if (!(eps_r_ins >= 1.0))
            throw std::invalid_argument("insulation permittivity must be >= 1");
        if (!(mu_c > 0.0) || !(mu_a > 0.0))
            throw std::invalid_argument("relative permeabilities must be positive");
        if (!(sigma_c_s_per_m > 0.0))
            throw std::invalid_argument("conductor conductivity must be positive");
        if (!(sigma_ins_s_per_m >= 0.0) || !(tan_delta >= 0.0))
            throw std::invalid_argument("insulation losses must be non-negative");
    }

    RlgcParameters rlgc_at(const CableSpec &spec, double freq_hz)
    {
        if (!(spec.c_m > spec.x_m))
            throw std::invalid_argument("rlgc_at: screen radius must exceed conductor radius");
        if (!(freq_hz >= 0.0) || !std::isfinite(freq_hz))
            throw std::domain_error("rlgc_at: frequency must be non-negative");

        const double log_ratio = std::log(spec.c_m / spec.x_m);
        RlgcParameters p;
        p.freq_hz = freq_hz;
        p.c_f_per_m = 2.0 * pi * constants::eps0 * spec.eps_r_ins / log_ratio;
        p.l_h_per_m = constants::mu0 / (2.0 * pi) * log_ratio;

        const double skin = (1.0 / (2.0 * pi * spec.x_m) + 1.0 / (2.0 * pi * spec.c_m)) *
                            std::sqrt(pi * freq_hz * constants::mu0 * spec.mu_c / spec.sigma_c_s_per_m);
        const double dc = 1.0 / (spec.sigma_c_s_per_m * pi * spec.x_m * spec.x_m);
        p.r_ohm_per_m = std::max(skin, dc);

        p.g_s_per_m = 2.0 * pi * freq_hz * p.c_f_per_m * spec.tan_delta +
                      2.0 * pi * spec.sigma_ins_s_per_m / log_ratio;
        return p;
    }

    PropagationConstant propagation_constant(const RlgcParameters &params)
    {
        const double w = constants::angular(params.freq_hz);
        const std::complex<double> series{params.r_ohm_per_m, w * params.l_h_per_m};
        const std::complex<double> shunt{params.g_s_per_m, w * params.c_f_per_m};
        std::complex<double> gamma = std::sqrt(series * shunt);
        if (gamma.real() < 0.0)
            gamma = -gamma;
        return {gamma.real(), gamma.imag(), params.freq_hz};
    }

    std::complex<double> characteristic_impedance(const RlgcParameters &params)
    {
        const double w = constants::angular(params.freq_hz);
        const std::complex<double> series{params.r_ohm_per_m, w * params.l_h_per_m};
        const std::complex<double> shunt{params.g_s_per_m, w * params.c_f_per_m};
        if (shunt == 0.0)
            throw numerical_error("characteristic_impedance: G + jwC vanishes (DC with no leakage)");
        std::complex<double> z0 = std::sqrt(series / shunt);
        if (z0.real() < 0.0)
            z0 = -z0;
        return z0;
    }

    double attenuation(const std::function<RlgcParameters(double)> &params_fn, double freq_hz, double length_m)
    {
        if (!(length_m >= 0.0))
            throw std::domain_error("attenuation: length must be non-negative");
        if (length_m == 0.0)
            return 1.0;
        return std::exp(-propagation_constant(params_fn(freq_hz)).alpha_np_per_m * length_m);
    }

    double attenuation(const CableSpec &spec, double freq_hz, double length_m)
    {
        return attenuation([&spec](double f) { return rlgc_at(spec, f); }, freq_hz, length_m);
    }
}
