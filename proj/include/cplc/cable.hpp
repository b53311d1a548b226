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

#pragma once

#include <complex>
#include <functional>

namespace cplc
{
    // Three-phase mining cable, geometry in metres. Defaults are the catalogue values of the
    // reference cable: outer sheath a, armour b, screen c, phase conductor radius x, bedding z.
    struct CableSpec
    {
        double a_m = 37.45e-3;
        double b_m = 29.65e-3;
        double c_m = 13.51e-3;
        double x_m = 3.6e-3;
        double z_m = 33.85e-3;
        double eps_r_ins = 2.25;
        double mu_c = 0.999994;
        double sigma_c_s_per_m = 5.8e7;
        double sigma_ins_s_per_m = 1e-13;
        double mu_a = 1.0;
        double tan_delta = 4e-4; // EPR loss tangent

        void validate() const; // throws std::invalid_argument
        bool operator==(const CableSpec &) const = default;
    };

    struct RlgcParameters
    {
        double r_ohm_per_m = 0.0;
        double l_h_per_m = 0.0;
        double g_s_per_m = 0.0;
        double c_f_per_m = 0.0;
        double freq_hz = 0.0;
    };

    struct PropagationConstant
    {
        double alpha_np_per_m = 0.0;
        double beta_rad_per_m = 0.0;
        double freq_hz = 0.0;
    };

    /// Per-unit-length parameters of the phase-conductor/screen pair treated as a coaxial line:
    ///   C = 2 pi eps0 eps_r / ln(c/x),   L = mu0 / (2 pi) ln(c/x)
    ///   R = max((1/(2 pi x) + 1/(2 pi c)) sqrt(pi f mu0 mu_c / sigma_c),  1 / (sigma_c pi x^2))
    ///   G = 2 pi f C tan_delta + 2 pi sigma_ins / ln(c/x)
    RlgcParameters rlgc_at(const CableSpec &spec, double freq_hz);

    // gamma = sqrt((R + jwL)(G + jwC)), principal root (alpha >= 0).
    PropagationConstant propagation_constant(const RlgcParameters &params);

    // Z0 = sqrt((R + jwL)/(G + jwC)) with Re(Z0) > 0. Throws numerical_error when G + jwC = 0.
    std::complex<double> characteristic_impedance(const RlgcParameters &params);

    // exp(-alpha(f) * length) in (0, 1].
    double attenuation(const std::function<RlgcParameters(double)> &params_fn, double freq_hz, double length_m);
    double attenuation(const CableSpec &spec, double freq_hz, double length_m);
}
