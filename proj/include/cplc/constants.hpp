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

#include <numbers>

namespace cplc::constants
{
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double speed_of_light = 2.9979e8;            // m/s
    inline constexpr double mu0 = 4.0e-7 * pi;                    // H/m
    inline constexpr double eps0 = 1.0 / (mu0 * speed_of_light * speed_of_light); // F/m
    inline constexpr double eta0 = mu0 * speed_of_light;          // ohm

    inline constexpr double wavelength(double freq_hz) { return speed_of_light / freq_hz; }
    inline constexpr double angular(double freq_hz) { return 2.0 * pi * freq_hz; }
    inline constexpr double wavenumber(double freq_hz) { return 2.0 * pi * freq_hz / speed_of_light; }
}
