/*
 * include/plasmo/observables.hpp
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

#include <string>
#include <vector>

#include "plasmo/forward_rbm.hpp"

namespace plasmo {

// Endpoint-inclusive trapezoid on the measurement arc.
struct ArcQuadrature {
    std::vector<double> theta, weight;
    bool contains_incident = false;
    double L = 0.0; // 2 R sin(dtheta) cos(theta_bar - theta0)
};
ArcQuadrature arc_quadrature(const Setup& s);
bool arc_contains(const MeasurementArc& arc, double theta);

struct CrossSections {
    double extinction = 0.0, scattering = 0.0, absorption = 0.0;
};

// Scattered field S^{km}[varphi] and its gradient.
struct FieldValue {
    cplx u;
    cplx grad[2];
};

// Exterior density as point sources: x and quadrature weight times |y'| varphi.
struct SourceSamples {
    std::vector<Vec2> x;
    std::vector<cplx> w;
};
SourceSamples exterior_sources(const DensitySolution& sol, const DesignCache& cache);

std::vector<cplx> far_field_h(const SourceSamples& src, cplx k, const std::vector<double>& theta);
double absorptance(const SourceSamples& src, const WaveContext& wc, const Setup& s);
CrossSections cross_sections(const SourceSamples& src, const WaveContext& wc, const Setup& s);
FieldValue scattered_field(const SourceSamples& src, const WaveContext& wc, Vec2 x);

// h(theta) = sum over particles of int e^{-i k xhat.y} |y'| varphi(s) ds
cplx far_field_h(const DensitySolution& sol, const DesignCache& cache, const WaveContext& wc, double theta);
std::vector<cplx> far_field_h(const DensitySolution& sol, const DesignCache& cache, const WaveContext& wc,
                              const std::vector<double>& theta);
// u_inf(theta) = -(e^{i pi/4}/sqrt(8 pi k)) h(theta)
cplx far_field(const DensitySolution& sol, const DesignCache& cache, const WaveContext& wc, double theta);

struct EnergyFlows {
    double incident = 0.0, scattered = 0.0, interference = 0.0;
};
EnergyFlows energy_flows_asymptotic(const DensitySolution& sol, const DesignCache& cache, const WaveContext& wc,
                                    const Setup& s);
double absorptance(const DensitySolution& sol, const DesignCache& cache, const WaveContext& wc, const Setup& s);

CrossSections cross_sections(const DensitySolution& sol, const DesignCache& cache, const WaveContext& wc,
                             const Setup& s);

FieldValue scattered_field(const DensitySolution& sol, const DesignCache& cache, const WaveContext& wc, Vec2 x);
// Fluxes through the arc of radius `radius` by composite Gauss-Legendre quadrature.
EnergyFlows finite_R_flux(const DensitySolution& sol, const DesignCache& cache, const WaveContext& wc, const Setup& s,
                          double radius, int panels = 64);

struct SpectrumPoint {
    double lambda, A, Qe, Qs, Qa;
};
struct Spectrum {
    WavelengthGrid grid;
    std::vector<SpectrumPoint> values;
    std::vector<double> absorptances() const;
};
// Forward solve at every grid wavelength. The cache must come from the same design.
Spectrum compute_spectrum(const DesignCache& cache, const Setup& s, const WavelengthGrid& grid);
Spectrum compute_spectrum(const DesignConfig& cfg, const Setup& s, const WavelengthGrid& grid);

struct TargetSpectrum {
    WavelengthGrid grid;
    std::vector<double> values;
};
TargetSpectrum constant_target(const WavelengthGrid& grid, double value);
// Piecewise constant target: value on [lo, hi] intervals, zero elsewhere.
TargetSpectrum band_target(const WavelengthGrid& grid, const std::vector<std::pair<double, double>>& bands,
                           double value);

double objective(const Spectrum& spec, const TargetSpectrum& target);
double objective(const std::vector<double>& A, const TargetSpectrum& target);

void write_spectrum_csv(const std::string& path, const Spectrum& spec, const std::string& header = "");
std::string format_double(double v); // %.17g

} // namespace plasmo
