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

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace cplc
{
    // Straight conductor. The local frame has +z along the wire; the global vertical is +y, so the
    // default axis (0,0,1) is horizontal.
    struct WireGeometry
    {
        double length_m = 2.0;
        double diameter_m = 7.2e-3;
        double height_m = 37.45e-3;
        std::array<double, 3> axis{0.0, 0.0, 1.0};

        void validate() const; // throws std::invalid_argument
        double radius_m() const { return 0.5 * diameter_m; }
        bool operator==(const WireGeometry &) const = default;
    };

    inline constexpr std::array<double, 3> global_up{0.0, 1.0, 0.0};

    struct ElectricalLength
    {
        double n;        // wire length in wavelengths
        double lambda_m; // free-space wavelength
        double freq_hz;
    };

    ElectricalLength electrical_length(double length_m, double freq_hz);

    struct PatternSample
    {
        double theta_rad = 0.0; // from the wire axis
        double phi_rad = 0.0;   // around the axis, from the upward normal
        double value = 0.0;     // |F| normalized to the grid maximum
    };

    struct DirectivityResult
    {
        double d_max_linear = 0.0;
        double d_max_dbi = 0.0;
        double theta_max_rad = 0.0;     // main-lobe angle to the wire line, in (0, pi/2]
        double lobe_theta_rad = 0.0;    // unfolded main-lobe polar angle in (0, pi)
        double lobe_phi_rad = 0.0;
        double normalization = 0.0;     // (1/4pi) * integral of D over the integration domain
        std::vector<PatternSample> pattern_grid;
    };

    struct ImpedanceResult
    {
        double r_rad_ohm = 0.0;
        double r_ohmic_ohm = 0.0;
        double reactance_ohm = 0.0;
        std::complex<double> z_in;
    };

    /// Normalized long-wire pattern |sin(pi n cos(theta) / 2) / sin(theta)|.
    ///
    /// Within 1e-6 rad of the axis the quotient is 0/0 for even n and is replaced by its
    /// L'Hopital form |(pi n / 2) cos(pi n cos(theta) / 2) sin(theta) / cos(theta)|, which is 0 at
    /// the exact endpoints. For other n the quotient grows like 1/theta near the axis, so the guard
    /// band also keeps the result finite.
    double pattern_f(double theta_rad, double n);

    /// Number of local maxima of |F| around the full circle theta in (0, 2 pi), sampled on a
    /// cell-centred grid no coarser than grid_resolution_rad. The circle is closed, so end-fire lobes
    /// that straddle theta = 0 or pi count once. Requires grid_resolution_rad <= pi / (64 n).
    int lobe_count(double n, double grid_resolution_rad);

    /// Raw |F| on the cell-centred full-circle grid used by lobe_count(): 4 * ceil(pi / (2 res))
    /// cells, theta_rad in (0, 2 pi) measured from the wire axis and mirrored for theta > pi.
    std::vector<PatternSample> pattern_circle(double n, double resolution_rad);

    // Counts samples that are strictly above the previous sample and not below the next one,
    // treating the sequence as periodic. Plateaus of equal samples count once.
    int count_circular_maxima(std::span<const double> values);

    /// Directivity of an azimuthally symmetric radiation intensity U(theta) on a midpoint
    /// (theta, phi) grid. P_rad is integrated along theta only; the normalization check integrates
    /// D over the full two-dimensional grid and must give 4 pi within 1e-2 relative.
    DirectivityResult directivity_from_intensity(const std::function<double(double)> &intensity,
                                                 double theta_resolution_rad,
                                                 double phi_resolution_rad);

    /// Closed-form directivity of the long-wire pattern at freq_hz (U ~ |F|^2).
    DirectivityResult directivity(const WireGeometry &geometry, double freq_hz,
                                  double quad_resolution_rad, double phi_resolution_rad);

    // 2 log10(2n) dBi.
    double d_max_approx_dbi(double n);

    /// Main-lobe angle arccos(sqrt(1 - 0.371/n)).
    double theta_max(double n);

    /// Textbook long-wire main-lobe angle arccos(1 - 0.371/n), for comparison output only.
    double theta_max_classical(double n);

    // 120 (ln(2L/d) - 1) ohm.
    double radiation_resistance(const WireGeometry &geometry);
    double radiation_resistance(double length_m, double diameter_m);

    /// Input impedance of the matched long wire: radiation resistance plus the skin-effect loss of
    /// a uniform-magnitude travelling current. A matched travelling-wave line presents no
    /// reactance, so reactance_ohm is 0.
    ImpedanceResult input_impedance(const WireGeometry &geometry, double freq_hz,
                                    double conductivity_s_per_m, double mu_r = 1.0);

    /// Travelling-wave current I_m sin(omega (t - z / (p c))). The constant retardation r/c is
    /// folded into the time origin.
    double traveling_wave_current(double z_m, double t_s, double i_peak_a, double freq_hz, double p);

    /// Integral of exp(j k z cos(theta)) dz over a segment of the given length centred on z = 0,
    /// i.e. length * sinc(k length cos(theta) / 2).
    double line_source_integral(double wavenumber, double length_m, double cos_theta);
}
