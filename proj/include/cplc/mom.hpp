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

#include "cplc/antenna.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace cplc
{
    // Lossy dielectric half-space below the wire.
    struct GroundParameters
    {
        double eps_r = 10.0;
        double sigma_s_per_m = 0.01;
        bool perfect = false; // perfect conductor; eps_r and sigma are ignored

        void validate() const;
        bool operator==(const GroundParameters &) const = default;
    };

    // eps_r - j sigma / (omega eps0)
    std::complex<double> complex_permittivity(const GroundParameters &ground, double freq_hz);

    /// Image weight for a horizontal current at grazing angle psi (radians above the ground plane):
    /// the horizontal-polarization Fresnel coefficient
    ///   (sin psi - sqrt(eps_c - cos^2 psi)) / (sin psi + sqrt(eps_c - cos^2 psi)),
    /// which tends to -1 for a perfect conductor and at grazing incidence.
    std::complex<double> reflection_coefficient(const GroundParameters &ground, double freq_hz, double grazing_rad);

    // How a wire end is closed. A terminal end is tied to ground through a source or a load and
    // carries current into the ground image; an open end has zero current at the tip.
    enum class EndCondition
    {
        open,
        terminal
    };

    /// Discretization of the wire into equal cells of length segment_length_m. Current unknowns
    /// sit on the cell nodes; interior unknowns carry a full pulse of one cell length, terminal end
    /// nodes a half pulse, and open end nodes are pinned to zero. "segments" counts the unknowns.
    struct MomMesh
    {
        int segments = 0;
        int cells = 0;
        double segment_length_m = 0.0;
        int feed_segment = 0;
        std::optional<int> load_segment;
        std::complex<double> load_impedance_ohm{0.0, 0.0};
        EndCondition start_end = EndCondition::open;
        EndCondition finish_end = EndCondition::open;

        void validate(const WireGeometry &geometry) const;

        int first_node() const { return start_end == EndCondition::open ? 1 : 0; }
        double node_position(const WireGeometry &geometry, int unknown) const; // metres from the wire centre
        std::pair<double, double> pulse(const WireGeometry &geometry, int unknown) const;
    };

    /// Open-ended wire fed by a delta gap at its centre. segments must be odd and >= 3.
    MomMesh center_fed_mesh(const WireGeometry &geometry, int segments);

    /// Wire fed between its first end and ground. With a load the far end is a terminal through
    /// load_ohm; without one the far end is open.
    MomMesh end_fed_mesh(const WireGeometry &geometry, int segments,
                         std::optional<std::complex<double>> load_ohm);

    // Smallest odd unknown count giving at least per_wavelength cells per wavelength.
    int segments_for(const WireGeometry &geometry, double freq_hz, double per_wavelength, bool center_fed);

    struct MomSolution
    {
        std::vector<std::complex<double>> currents; // amperes, one per unknown
        std::complex<double> z_in;
        double freq_hz = 0.0;
        MomMesh mesh;
    };

    using ComplexMatrix = Eigen::MatrixXcd;

    /// Mixed-potential point-matched thin-wire EFIE with the reduced kernel exp(-jkR)/(4 pi R),
    /// R = sqrt(dz^2 + a^2). With ground, each source also radiates through its image at depth
    /// 2h weighted by reflection_coefficient() at the specular angle atan(2h/|dz|) of the pair.
    /// The matrix is symmetric; the load impedance sits on the diagonal at load_segment.
    ComplexMatrix build_impedance_matrix(const WireGeometry &geometry, const MomMesh &mesh, double freq_hz,
                                         const std::optional<GroundParameters> &ground);

    /// Solves [Z][I] = [V] with V = feed_voltage at feed_segment. Throws numerical_error with the
    /// reciprocal condition estimate when the matrix is singular.
    MomSolution solve_currents(const ComplexMatrix &z_matrix, int feed_segment,
                               std::complex<double> feed_voltage = 1.0);

    // Fill + solve, with frequency and mesh attached to the solution.
    MomSolution solve(const WireGeometry &geometry, const MomMesh &mesh, double freq_hz,
                      const std::optional<GroundParameters> &ground);

    /// Far-field E_theta at 1 m (phase reference at the wire centre) from the solved currents.
    /// With ground, directions below the horizon return 0.
    std::complex<double> far_field(const MomSolution &solution, const WireGeometry &geometry,
                                   double theta_rad, double phi_rad,
                                   const std::optional<GroundParameters> &ground);

    /// Directivity from MoM far-field samples on a midpoint (theta, phi) grid. With ground only the
    /// upper half-space (phi in (-pi/2, pi/2)) is integrated.
    DirectivityResult mom_directivity(const MomSolution &solution, const WireGeometry &geometry,
                                      const std::optional<GroundParameters> &ground,
                                      double quad_resolution_rad, double phi_resolution_rad);

    // max|I| / min|I| over the current unknowns.
    double current_swr(const MomSolution &solution);

    /// Characteristic impedance of the wire and its ground image as a transmission line,
    /// 60 acosh(h/a). This is the termination that matches the radiating mode.
    double wire_over_ground_impedance(const WireGeometry &geometry);
}
