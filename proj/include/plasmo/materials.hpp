/*
 * include/plasmo/materials.hpp
 *
 * This source file is part of the plasmo project
 *
 * Copyright 2026 The plasmo authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <vector>

#include "plasmo/common.hpp"

namespace plasmo {

struct DrudeMaterial {
    double plasma_frequency = 7.613; // eV
    double damping = 0.048;          // eV
};

// Particle permittivity source. Constant mode is used for null tests.
struct ParticleMaterial {
    enum class Model { Drude, Constant } model = Model::Drude;
    DrudeMaterial drude{};
    cplx constant_permittivity{1.0, 0.0};
    double rel_permeability = 1.0;
};

struct BackgroundMedium {
    double rel_permittivity = 1.0;
    double rel_permeability = 1.0;
};

struct WavelengthGrid {
    double lambda_min = 150.0;
    double lambda_max = 550.0;
    int count = 401;
    std::vector<double> nodes;
};

struct Wavenumbers {
    double k0;
    cplx km;
    cplx kc;
    cplx eps_c;
    double eps_m;
};

double photon_energy_ev(double lambda_nm);
cplx drude_permittivity(const DrudeMaterial& material, double lambda_nm);
cplx particle_permittivity(const ParticleMaterial& material, double lambda_nm);
Wavenumbers wavenumbers(double lambda_nm, const BackgroundMedium& medium, const ParticleMaterial& material);

WavelengthGrid make_grid(double lambda_min, double lambda_max, int count);
// Trapezoid weights on a uniform grid.
std::vector<double> trapezoid_weights(const WavelengthGrid& grid);

void validate(const DrudeMaterial& m);
void validate(const BackgroundMedium& m);

} // namespace plasmo
