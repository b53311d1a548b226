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

#include "cplc/mom.hpp"
#include "cplc/constants.hpp"
#include "cplc/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cplc
{
    using constants::pi;
    using cdouble = std::complex<double>;
    using quad16 = boost::math::quadrature::gauss<double, 16>;

    namespace
    {
        constexpr cdouble j1{0.0, 1.0};

        // Integral of exp(-jkR)/(4 pi R) over z' in [z1, z2], R = sqrt((zobs - z')^2 + rho^2).
        // The 1/R part is integrated analytically, the bounded remainder by Gauss-Legendre.
        cdouble kernel_integral(double zobs, double z1, double z2, double rho, double k)
        {
            if (!(rho > 0.0))
                throw numerical_error("kernel: observation point coincides with the source axis");
            const double singular = std::asinh((z2 - zobs) / rho) - std::asinh((z1 - zobs) / rho);
            auto smooth = [&](double z) -> cdouble
            {
                const double dz = zobs - z;
                const double r = std::sqrt(dz * dz + rho * rho);
                return (std::exp(-j1 * (k * r)) - 1.0) / r;
            };
            const cdouble rest = quad16::integrate(smooth, z1, z2);
            return (singular + rest) / (4.0 * pi);
        }

        bool has_terminal(const MomMesh &mesh)
        {
            return mesh.start_end == EndCondition::terminal || mesh.finish_end == EndCondition::terminal;
        }
    }

    void GroundParameters::validate() const
    {
        if (perfect)
            return;
        if (!(eps_r >= 1.0) || !std::isfinite(eps_r))
            throw std::invalid_argument("ground relative permittivity must be >= 1");
        if (!(sigma_s_per_m >= 0.0) || !std::isfinite(sigma_s_per_m))
            throw std::invalid_argument("ground conductivity must be non-negative");
    }

    cdouble complex_permittivity(const GroundParameters &ground, double freq_hz)
    {
        if (!(freq_hz > 0.0))
            throw std::domain_error("complex_permittivity: frequency must be positive");
        return {ground.eps_r, -ground.sigma_s_per_m / (constants::angular(freq_hz) * constants::eps0)};
    }

    cdouble reflection_coefficient(const GroundParameters &ground, double freq_hz, double grazing_rad)
    {
        if (ground.perfect)
            return -1.0;
        const cdouble eps_c = complex_permittivity(ground, freq_hz);
        const double s = std::sin(grazing_rad);
        const double c = std::cos(grazing_rad);
        const cdouble root = std::sqrt(eps_c - c * c);
        return (s - root) / (s + root);
    }

    void MomMesh::validate(const WireGeometry &geometry) const
    {
        if (segments < 3)
            throw std::invalid_argument("mom mesh: at least 3 segments required");
        const int open_ends = (start_end == EndCondition::open) + (finish_end == EndCondition::open);
        if (cells != segments - 1 + open_ends)
            throw std::invalid_argument("mom mesh: cell count inconsistent with end conditions");
        if (!(segment_length_m > 0.0) ||
            std::abs(cells * segment_length_m - geometry.length_m) > 1e-9 * geometry.length_m)
            throw std::invalid_argument("mom mesh: cells * segment_length must equal the wire length");
        if (feed_segment < 0 || feed_segment >= segments)
            throw std::invalid_argument("mom mesh: feed segment out of range");
        if (load_segment)
        {
            if (*load_segment < 0 || *load_segment >= segments)
                throw std::invalid_argument("mom mesh: load segment out of range");
            if (*load_segment == feed_segment)
                throw std::invalid_argument("mom mesh: feed and load must be on different segments");
        }
    }

    double MomMesh::node_position(const WireGeometry &geometry, int unknown) const
    {
        return -0.5 * geometry.length_m + (first_node() + unknown) * segment_length_m;
    }

    std::pair<double, double> MomMesh::pulse(const WireGeometry &geometry, int unknown) const
    {
        const double half = 0.5 * geometry.length_m;
        const double z = node_position(geometry, unknown);
        return {std::max(z - 0.5 * segment_length_m, -half), std::min(z + 0.5 * segment_length_m, half)};
    }

    MomMesh center_fed_mesh(const WireGeometry &geometry, int segments)
    {
        geometry.validate();
        if (segments < 3 || segments % 2 == 0)
            throw std::invalid_argument("center_fed_mesh: segment count must be odd and >= 3");
        MomMesh mesh;
        mesh.segments = segments;
        mesh.cells = segments + 1;
        mesh.segment_length_m = geometry.length_m / mesh.cells;
        mesh.feed_segment = (segments - 1) / 2;
        return mesh;
    }

    MomMesh end_fed_mesh(const WireGeometry &geometry, int segments, std::optional<cdouble> load_ohm)
    {
        geometry.validate();
        if (segments < 3)
            throw std::invalid_argument("end_fed_mesh: at least 3 segments required");
        MomMesh mesh;
        mesh.segments = segments;
        mesh.start_end = EndCondition::terminal;
        mesh.feed_segment = 0;
        if (load_ohm)
        {
            mesh.finish_end = EndCondition::terminal;
            mesh.cells = segments - 1;
            mesh.load_segment = segments - 1;
            mesh.load_impedance_ohm = *load_ohm;
        }
        else
        {
            mesh.finish_end = EndCondition::open;
            mesh.cells = segments;
        }
        mesh.segment_length_m = geometry.length_m / mesh.cells;
        return mesh;
    }

    int segments_for(const WireGeometry &geometry, double freq_hz, double per_wavelength, bool center_fed)
    {
        const double n = electrical_length(geometry.length_m, freq_hz).n;
        int cells = std::max(4, static_cast<int>(std::ceil(n * per_wavelength)));
        if (center_fed)
        {
            cells += cells % 2; // even cell count puts a node at the centre
            return cells - 1;
        }
        cells += cells % 2;
        return cells + 1;
    }

    ComplexMatrix build_impedance_matrix(const WireGeometry &geometry, const MomMesh &mesh, double freq_hz,
                                         const std::optional<GroundParameters> &ground)
    {
        geometry.validate();
        mesh.validate(geometry);
        if (ground)
            ground->validate();
        const double lambda = constants::wavelength(freq_hz);
        if (!(mesh.segment_length_m < lambda / 10.0))
            throw numerical_error("mom mesh too coarse: segment length " + std::to_string(mesh.segment_length_m) +
                                  " m is not below lambda/10 = " + std::to_string(lambda / 10.0) + " m");
        if (has_terminal(mesh) && !ground)
            throw std::invalid_argument("mom: terminal wire ends need a ground plane to return current");
        if (ground && !(geometry.height_m > geometry.radius_m()))
            throw std::invalid_argument("mom: wire height must exceed the wire radius when ground is present");

        const double k = constants::wavenumber(freq_hz);
        const double omega = constants::angular(freq_hz);
        const double a = geometry.radius_m();
        const double image_rho = 2.0 * geometry.height_m;
        const double delta = mesh.segment_length_m;
        const int n = mesh.segments;
        const int cells = mesh.cells;

        auto image_weight = [&](double dz) -> cdouble
        {
            return reflection_coefficient(*ground, freq_hz, std::atan2(image_rho, std::abs(dz)));
        };
        // Integral over [z1, z2] seen from zobs, free-space plus image.
        auto integral = [&](double zobs, double z1, double z2, double dz_centres) -> cdouble
        {
            cdouble v = kernel_integral(zobs, z1, z2, a, k);
            if (ground)
                v += image_weight(dz_centres) * kernel_integral(zobs, z1, z2, image_rho, k);
            return v;
        };

        // Scalar potential at the centre of cell p due to unit charge density on cell q depends only
        // on |p - q|.
        std::vector<cdouble> cell_coupling(cells);
        for (int off = 0; off < cells; ++off)
        {
            const double zc = (off + 0.5) * delta;
            cell_coupling[off] = integral(zc, 0.0, delta, off * delta);
        }

        // Full-pulse vector-potential coupling also depends only on the node offset.
        std::vector<cdouble> full_coupling(cells + 1);
        for (int off = 0; off <= cells; ++off)
            full_coupling[off] = integral(off * delta, -0.5 * delta, 0.5 * delta, off * delta);

        const int first = mesh.first_node();
        auto is_full = [&](int i)
        {
            const int node = first + i;
            return node > 0 && node < cells;
        };

        ComplexMatrix z(n, n);
        const cdouble a_scale = j1 * omega * constants::mu0;
        const cdouble phi_scale = 1.0 / (j1 * omega * constants::eps0 * delta);

        for (int i = 0; i < n; ++i)
        {
            const int node_i = first + i;
            const auto [pi0, pi1] = mesh.pulse(geometry, i);
            const double mid_i = 0.5 * (pi0 + pi1);
            for (int jx = 0; jx < n; ++jx)
            {
                const int node_j = first + jx;
                cdouble vec_term;
                if (is_full(i) && is_full(jx))
                    vec_term = full_coupling[std::abs(node_i - node_j)];
                else
                {
                    const auto [pj0, pj1] = mesh.pulse(geometry, jx);
                    vec_term = integral(mid_i, pj0, pj1, mid_i - 0.5 * (pj0 + pj1));
                }
                vec_term *= a_scale * (pi1 - pi0);

                // Node i tests the potential difference between the cells on either side of it;
                // node j contributes charge (I_j) to cell j and (-I_j) to cell j-1.
                cdouble pot = 0.0;
                for (int ci : {node_i, node_i - 1})
                {
                    if (ci < 0 || ci >= cells)
                        continue;
                    const double si = (ci == node_i) ? 1.0 : -1.0;
                    for (int cj : {node_j, node_j - 1})
                    {
                        if (cj < 0 || cj >= cells)
                            continue;
                        const double sj = (cj == node_j) ? 1.0 : -1.0;
                        pot += si * sj * cell_coupling[std::abs(ci - cj)];
                    }
                }
                z(i, jx) = vec_term + phi_scale * pot;
            }
        }

        // Half pulses make the point-matched vector term slightly non-reciprocal; average it out.
        const ComplexMatrix sym = 0.5 * (z + z.transpose());
        z = sym;

        if (mesh.load_segment)
            z(*mesh.load_segment, *mesh.load_segment) += mesh.load_impedance_ohm;
        return z;
    }

    MomSolution solve_currents(const ComplexMatrix &z_matrix, int feed_segment, cdouble feed_voltage)
    {
        const auto n = z_matrix.rows();
        if (n == 0 || z_matrix.cols() != n)
            throw std::invalid_argument("solve_currents: impedance matrix must be square and non-empty");
        if (feed_segment < 0 || feed_segment >= n)
            throw std::invalid_argument("solve_currents: feed segment out of range");

        Eigen::PartialPivLU<ComplexMatrix> lu(z_matrix);
        const double rcond = lu.rcond();
        if (!(rcond > 1e-14))
            throw numerical_error("solve_currents: impedance matrix is singular (rcond estimate " +
                                  std::to_string(rcond) + ")");

        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
        v(feed_segment) = feed_voltage;
        const Eigen::VectorXcd current = lu.solve(v);

        MomSolution out;
        out.currents.assign(current.data(), current.data() + n);
        for (const auto &c : out.currents)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw numerical_error("solve_currents: non-finite current");
        out.z_in = feed_voltage / out.currents[feed_segment];
        return out;
    }

    MomSolution solve(const WireGeometry &geometry, const MomMesh &mesh, double freq_hz,
                      const std::optional<GroundParameters> &ground)
    {
        MomSolution out = solve_currents(build_impedance_matrix(geometry, mesh, freq_hz, ground), mesh.feed_segment);
        out.freq_hz = freq_hz;
        out.mesh = mesh;
        return out;
    }

    namespace
    {
        // sum_i I_i * integral over pulse i of exp(j k z cos(theta)) dz
        cdouble array_factor(const MomSolution &solution, const WireGeometry &geometry, double k, double cos_theta)
        {
            cdouble sum = 0.0;
            for (int i = 0; i < solution.mesh.segments; ++i)
            {
                const auto [z0, z1] = solution.mesh.pulse(geometry, i);
                const double mid = 0.5 * (z0 + z1);
                sum += solution.currents[i] * line_source_integral(k, z1 - z0, cos_theta) *
                       std::exp(j1 * (k * mid * cos_theta));
            }
            return sum;
        }

        cdouble ground_factor(const GroundParameters &ground, double freq_hz, double k, double height, double up)
        {
            if (up <= 0.0)
                return 0.0;
            const cdouble direct = std::exp(j1 * (k * height * up));
            const cdouble image = std::exp(-j1 * (k * height * up));
            return direct + reflection_coefficient(ground, freq_hz, std::asin(std::min(up, 1.0))) * image;
        }

        void check_solution(const MomSolution &solution)
        {
            if (solution.mesh.segments <= 0 || static_cast<int>(solution.currents.size()) != solution.mesh.segments ||
                !(solution.freq_hz > 0.0))
                throw std::invalid_argument("mom: solution has no mesh/frequency attached (use cplc::solve)");
        }
    }

    cdouble far_field(const MomSolution &solution, const WireGeometry &geometry, double theta_rad, double phi_rad,
                      const std::optional<GroundParameters> &ground)
    {
        check_solution(solution);
        const double k = constants::wavenumber(solution.freq_hz);
        const double st = std::sin(theta_rad);
        const cdouble prefactor = j1 * constants::eta0 * k / (4.0 * pi) * st;
        cdouble e = prefactor * array_factor(solution, geometry, k, std::cos(theta_rad));
        if (ground)
            e *= ground_factor(*ground, solution.freq_hz, k, geometry.height_m, st * std::cos(phi_rad));
        return e;
    }

    DirectivityResult mom_directivity(const MomSolution &solution, const WireGeometry &geometry,
                                      const std::optional<GroundParameters> &ground,
                                      double quad_resolution_rad, double phi_resolution_rad)
    {
        check_solution(solution);
        if (!(quad_resolution_rad > 0.0 && quad_resolution_rad <= pi / 180.0 * (1.0 + 1e-12)) ||
            !(phi_resolution_rad > 0.0))
            throw std::domain_error("mom_directivity: quadrature resolution must be in (0, 1 deg]");

        const double k = constants::wavenumber(solution.freq_hz);
        const double phi_span = ground ? pi : 2.0 * pi;
        const double phi_start = ground ? -0.5 * pi : 0.0;
        const auto n_theta = static_cast<std::size_t>(std::ceil(pi / quad_resolution_rad - 1e-9));
        const auto n_phi = static_cast<std::size_t>(std::ceil(phi_span / phi_resolution_rad - 1e-9));
        const double h_theta = pi / static_cast<double>(n_theta);
        const double h_phi = phi_span / static_cast<double>(n_phi);

        std::vector<double> intensity(n_theta * n_phi);
        std::vector<double> weight(n_theta);
        double p_rad = 0.0;
        for (std::size_t i = 0; i < n_theta; ++i)
        {
            const double theta = (static_cast<double>(i) + 0.5) * h_theta;
            const double st = std::sin(theta);
            weight[i] = st * h_theta * h_phi;
            const cdouble base = j1 * constants::eta0 * k / (4.0 * pi) * st *
                                 array_factor(solution, geometry, k, std::cos(theta));
            for (std::size_t jp = 0; jp < n_phi; ++jp)
            {
                const double phi = phi_start + (static_cast<double>(jp) + 0.5) * h_phi;
                cdouble e = base;
                if (ground)
                    e *= ground_factor(*ground, solution.freq_hz, k, geometry.height_m, st * std::cos(phi));
                const double u = std::norm(e) / (2.0 * constants::eta0);
                intensity[i * n_phi + jp] = u;
                p_rad += u * weight[i];
            }
        }
        if (!(p_rad > 0.0) || !std::isfinite(p_rad))
            throw numerical_error("mom_directivity: radiated power is zero or not finite");

        DirectivityResult out;
        std::size_t best = 0;
        double total = 0.0;
        for (std::size_t idx = 0; idx < intensity.size(); ++idx)
        {
            total += 4.0 * pi * intensity[idx] / p_rad * weight[idx / n_phi];
            if (intensity[idx] > intensity[best])
                best = idx;
        }
        out.normalization = total / (4.0 * pi);
        if (std::abs(out.normalization - 1.0) > 1e-2)
            throw numerical_error("mom_directivity: normalization check failed");

        const double theta_best = (static_cast<double>(best / n_phi) + 0.5) * h_theta;
        out.d_max_linear = 4.0 * pi * intensity[best] / p_rad;
        out.d_max_dbi = 10.0 * std::log10(out.d_max_linear);
        out.lobe_theta_rad = theta_best;
        out.lobe_phi_rad = phi_start + (static_cast<double>(best % n_phi) + 0.5) * h_phi;
        out.theta_max_rad = std::min(theta_best, pi - theta_best);

        const double peak = intensity[best];
        out.pattern_grid.reserve(intensity.size());
        for (std::size_t idx = 0; idx < intensity.size(); ++idx)
            out.pattern_grid.push_back({(static_cast<double>(idx / n_phi) + 0.5) * h_theta,
                                        phi_start + (static_cast<double>(idx % n_phi) + 0.5) * h_phi,
                                        std::sqrt(intensity[idx] / peak)});
        return out;
    }

    double current_swr(const MomSolution &solution)
    {
        if (solution.currents.empty())
            throw std::invalid_argument("current_swr: empty solution");
        double lo = std::abs(solution.currents.front());
        double hi = lo;
        for (const auto &c : solution.currents)
        {
            lo = std::min(lo, std::abs(c));
            hi = std::max(hi, std::abs(c));
        }
        if (!(lo > 0.0))
            return std::numeric_limits<double>::infinity();
        return hi / lo;
    }

    double wire_over_ground_impedance(const WireGeometry &geometry)
    {
        geometry.validate();
        const double ratio = geometry.height_m / geometry.radius_m();
        if (!(ratio > 1.0))
            throw std::domain_error("wire_over_ground_impedance: height must exceed the wire radius");
        return 60.0 * std::acosh(ratio);
    }
}
