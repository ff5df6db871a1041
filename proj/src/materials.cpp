/*
 * src/materials.cpp
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

#include "plasmo/materials.hpp"

#include <cmath>

namespace plasmo {

double photon_energy_ev(double lambda_nm) {
    if (!(lambda_nm > 0.0)) fail_argument("wavelength must be positive");
    return kHcEvNm / lambda_nm;
}

cplx drude_permittivity(const DrudeMaterial& material, double lambda_nm) {
    const double w = photon_energy_ev(lambda_nm);
    const double wp = material.plasma_frequency;
    return 1.0 - wp * wp / (w * cplx(w, material.damping));
}

cplx particle_permittivity(const ParticleMaterial& material, double lambda_nm) {
    if (material.model == ParticleMaterial::Model::Constant) {
        photon_energy_ev(lambda_nm);
        return material.constant_permittivity;
    }
    return drude_permittivity(material.drude, lambda_nm);
}

static cplx upper_sqrt(cplx z) {
    cplx s = std::sqrt(z);
    if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0)) s = -s;
    return s;
}

Wavenumbers wavenumbers(double lambda_nm, const BackgroundMedium& medium, const ParticleMaterial& material) {
    if (!(lambda_nm > 0.0)) fail_argument("wavelength must be positive");
    Wavenumbers w{};
    w.k0 = 2.0 * kPi / lambda_nm;
    w.eps_m = medium.rel_permittivity;
    w.km = w.k0 * std::sqrt(medium.rel_permittivity * medium.rel_permeability);
    w.eps_c = particle_permittivity(material, lambda_nm);
    w.kc = w.k0 * upper_sqrt(w.eps_c * material.rel_permeability);
    return w;
}

WavelengthGrid make_grid(double lambda_min, double lambda_max, int count) {
    if (!(lambda_min > 0.0) || !(lambda_max > lambda_min))
        fail_argument("wavelength grid needs 0 < lambda_min < lambda_max");
    if (count < 2) fail_argument("wavelength grid needs at least 2 nodes");
    WavelengthGrid g{lambda_min, lambda_max, count, {}};
    g.nodes.resize(count);
    const double h = (lambda_max - lambda_min) / (count - 1);
    for (int i = 0; i < count; ++i) g.nodes[i] = lambda_min + h * i;
    g.nodes.back() = lambda_max;
    return g;
}

std::vector<double> trapezoid_weights(const WavelengthGrid& grid) {
    const int n = static_cast<int>(grid.nodes.size());
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;
    const double h = (grid.lambda_max - grid.lambda_min) / (n - 1);
    for (int i = 0; i < n; ++i) w[i] = h;
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

void validate(const DrudeMaterial& m) {
    if (!(m.plasma_frequency > 0.0)) fail_argument("plasma frequency must be positive");
    if (!(m.damping >= 0.0)) fail_argument("damping must be non-negative");
}

void validate(const BackgroundMedium& m) {
    if (!(m.rel_permittivity > 0.0) || !(m.rel_permeability > 0.0))
        fail_argument("background permittivity and permeability must be positive");
}

} // namespace plasmo
