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

#include "cplc/antenna.hpp"
#include "cplc/constants.hpp"
#include "cplc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cplc
{
    using constants::pi;

    void WireGeometry::validate() const
    {
        if (!(std::isfinite(length_m) && length_m > 0.0))
            throw std::invalid_argument("wire length must be positive");
        if (!(std::isfinite(diameter_m) && diameter_m > 0.0))
            throw std::invalid_argument("wire diameter must be positive");
        if (!(diameter_m < length_m / 100.0))
            throw std::invalid_argument("wire diameter must be below 1/100 of its length (thin-wire model)");
        if (!(std::isfinite(height_m) && height_m >= 0.0))
            throw std::invalid_argument("wire height must be non-negative");
        const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
        if (!(std::abs(norm - 1.0) < 1e-9))
            throw std::invalid_argument("wire axis must be a unit vector");
    }

    ElectricalLength electrical_length(double length_m, double freq_hz)
    {
        if (!(freq_hz > 0.0) || !std::isfinite(freq_hz))
            throw std::domain_error("frequency must be positive");
        if (!(length_m > 0.0))
            throw std::domain_error("length must be positive");
        const double lambda = constants::wavelength(freq_hz);
        return {length_m / lambda, lambda, freq_hz};
    }

    double pattern_f(double theta_rad, double n)
    {
        if (!(theta_rad >= 0.0 && theta_rad <= pi))
            throw std::domain_error("pattern_f: theta outside [0, pi]");
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::domain_error("pattern_f: electrical length must be positive");

        constexpr double guard = 1e-6;
        const double c = std::cos(theta_rad);
        const double s = std::sin(theta_rad);
        if (theta_rad < guard || pi - theta_rad < guard)
            return std::abs(0.5 * pi * n * std::cos(0.5 * pi * n * c) * s / c);
        return std::abs(std::sin(0.5 * pi * n * c) / s);
    }

    int count_circular_maxima(std::span<const double> values)
    {
        // Collapse runs of equal samples so that plateaus behave like single points.
        std::vector<double> runs;
        runs.reserve(values.size());
        for (double v : values)
            if (runs.empty() || v != runs.back())
                runs.push_back(v);
        if (runs.size() > 1 && runs.front() == runs.back())
            runs.pop_back();

        const std::size_t m = runs.size();
        if (m < 2)
            return 0;
        int count = 0;
        for (std::size_t i = 0; i < m; ++i)
        {
            const double prev = runs[(i + m - 1) % m];
            const double next = runs[(i + 1) % m];
            if (runs[i] > prev && runs[i] > next)
                ++count;
        }
        return count;
    }

    std::vector<PatternSample> pattern_circle(double n, double resolution_rad)
    {
        if (!(resolution_rad > 0.0))
            throw std::domain_error("pattern_circle: resolution must be positive");
        // Multiple of 4 cells keeps theta = pi/2, pi and 3pi/2 on cell edges.
        const auto quarter = static_cast<std::size_t>(std::ceil(0.5 * pi / resolution_rad - 1e-9));
        const std::size_t cells = 4 * quarter;
        const double step = 2.0 * pi / static_cast<double>(cells);

        std::vector<PatternSample> out(cells);
        for (std::size_t i = 0; i < cells; ++i)
        {
            const double angle = (static_cast<double>(i) + 0.5) * step;
            const double theta = angle > pi ? 2.0 * pi - angle : angle;
            out[i] = {angle, 0.0, pattern_f(theta, n)};
        }
        return out;
    }

    int lobe_count(double n, double grid_resolution_rad)
    {
        if (!(n >= 1.0) || !std::isfinite(n))
            throw std::domain_error("lobe_count: requires n >= 1");
        if (!(grid_resolution_rad > 0.0))
            throw std::domain_error("lobe_count: grid resolution must be positive");
        if (grid_resolution_rad > pi / (64.0 * n) * (1.0 + 1e-12))
            throw std::domain_error("lobe_count: grid resolution " + std::to_string(grid_resolution_rad) +
                                    " rad cannot separate adjacent nulls (need <= pi/(64 n))");

        const auto circle = pattern_circle(n, grid_resolution_rad);
        std::vector<double> values;
        values.reserve(circle.size());
        for (const auto &sample : circle)
            values.push_back(sample.value);
        return count_circular_maxima(values);
    }

    DirectivityResult directivity_from_intensity(const std::function<double(double)> &intensity,
                                                 double theta_resolution_rad,
                                                 double phi_resolution_rad)
    {
        if (!(theta_resolution_rad > 0.0) || !(phi_resolution_rad > 0.0))
            throw std::domain_error("directivity: quadrature resolution must be positive");

        const auto n_theta = static_cast<std::size_t>(std::ceil(pi / theta_resolution_rad - 1e-9));
        const auto n_phi = static_cast<std::size_t>(std::ceil(2.0 * pi / phi_resolution_rad - 1e-9));
        const double h_theta = pi / static_cast<double>(n_theta);
        const double h_phi = 2.0 * pi / static_cast<double>(n_phi);

        std::vector<double> theta(n_theta), u(n_theta), sin_w(n_theta);
        double p_rad = 0.0;
        for (std::size_t i = 0; i < n_theta; ++i)
        {
            theta[i] = (static_cast<double>(i) + 0.5) * h_theta;
            u[i] = intensity(theta[i]);
            if (!std::isfinite(u[i]) || u[i] < 0.0)
                throw numerical_error("directivity: radiation intensity is negative or not finite");
            sin_w[i] = std::sin(theta[i]) * h_theta;
            p_rad += u[i] * sin_w[i];
        }
        p_rad *= 2.0 * pi;
        if (!(p_rad > 0.0))
            throw numerical_error("directivity: total radiated power is zero");

        DirectivityResult out;
        std::size_t i_max = 0;
        double total = 0.0;
        for (std::size_t i = 0; i < n_theta; ++i)
        {
            const double d = 4.0 * pi * u[i] / p_rad;
            for (std::size_t j = 0; j < n_phi; ++j)
                total += d * sin_w[i] * h_phi;
            if (u[i] > u[i_max])
                i_max = i;
        }
        out.normalization = total / (4.0 * pi);
        if (std::abs(out.normalization - 1.0) > 1e-2)
            throw numerical_error("directivity: normalization check failed (integral of D / 4pi = " +
                                  std::to_string(out.normalization) + ")");

        out.d_max_linear = 4.0 * pi * u[i_max] / p_rad;
        out.d_max_dbi = 10.0 * std::log10(out.d_max_linear);
        out.lobe_theta_rad = theta[i_max];
        out.lobe_phi_rad = 0.0;
        out.theta_max_rad = std::min(theta[i_max], pi - theta[i_max]);

        out.pattern_grid.reserve(n_theta);
        for (std::size_t i = 0; i < n_theta; ++i)
            out.pattern_grid.push_back({theta[i], 0.0, std::sqrt(u[i] / u[i_max])});
        return out;
    }

    DirectivityResult directivity(const WireGeometry &geometry, double freq_hz,
                                  double quad_resolution_rad, double phi_resolution_rad)
    {
        geometry.validate();
        if (!(quad_resolution_rad > 0.0 && quad_resolution_rad <= pi / 180.0 * (1.0 + 1e-12)))
            throw std::domain_error("directivity: quadrature resolution must be in (0, 1 deg]");
        const double n = electrical_length(geometry.length_m, freq_hz).n;
        return directivity_from_intensity([n](double th)
                                          { const double f = pattern_f(th, n); return f * f; },
                                          quad_resolution_rad, phi_resolution_rad);
    }

    double d_max_approx_dbi(double n)
    {
        if (!(n > 0.5))
            throw std::domain_error("d_max_approx: requires n > 0.5");
        return 2.0 * std::log10(2.0 * n);
    }

    double theta_max(double n)
    {
        if (!(n >= 0.371) || !std::isfinite(n))
            throw std::domain_error("theta_max: requires n >= 0.371");
        return std::acos(std::sqrt(std::max(0.0, 1.0 - 0.371 / n)));
    }

    double theta_max_classical(double n)
    {
        if (!(n >= 0.1855) || !std::isfinite(n))
            throw std::domain_error("theta_max_classical: requires n >= 0.1855");
        return std::acos(std::clamp(1.0 - 0.371 / n, -1.0, 1.0));
    }

    double radiation_resistance(double length_m, double diameter_m)
    {
        const double slenderness = 2.0 * length_m / diameter_m;
        if (!(slenderness >= std::numbers::e) || !std::isfinite(slenderness))
            throw std::domain_error("radiation_resistance: 2L/d must be at least e");
        return 120.0 * (std::log(slenderness) - 1.0);
    }

    double radiation_resistance(const WireGeometry &geometry)
    {
        geometry.validate();
        return radiation_resistance(geometry.length_m, geometry.diameter_m);
    }

    ImpedanceResult input_impedance(const WireGeometry &geometry, double freq_hz,
                                    double conductivity_s_per_m, double mu_r)
    {
        geometry.validate();
        if (!(freq_hz >= 0.0) || !(conductivity_s_per_m > 0.0))
            throw std::domain_error("input_impedance: invalid frequency or conductivity");
        ImpedanceResult out;
        out.r_rad_ohm = radiation_resistance(geometry);
        const double surface_r = std::sqrt(pi * freq_hz * constants::mu0 * mu_r / conductivity_s_per_m);
        out.r_ohmic_ohm = geometry.length_m * surface_r / (2.0 * pi * geometry.radius_m());
        out.reactance_ohm = 0.0;
        out.z_in = {out.r_rad_ohm + out.r_ohmic_ohm, out.reactance_ohm};
        return out;
    }

    double traveling_wave_current(double z_m, double t_s, double i_peak_a, double freq_hz, double p)
    {
        if (!(p > 0.0 && p <= 1.0))
            throw std::domain_error("traveling_wave_current: relative phase velocity must be in (0, 1]");
        if (!(z_m >= 0.0))
            throw std::domain_error("traveling_wave_current: z must be non-negative");
        const double omega = constants::angular(freq_hz);
        return i_peak_a * std::sin(omega * (t_s - z_m / (p * constants::speed_of_light)));
    }

    double line_source_integral(double wavenumber, double length_m, double cos_theta)
    {
        const double x = 0.5 * wavenumber * length_m * cos_theta;
        if (std::abs(x) < 1e-8)
            return length_m * (1.0 - x * x / 6.0);
        return length_m * std::sin(x) / x;
    }
}
