/*
 * include/plasmo/discretization.hpp
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

#include <Eigen/Dense>
#include <vector>

#include "plasmo/geometry.hpp"
#include "plasmo/materials.hpp"
#include "plasmo/spectral.hpp"

namespace plasmo {

struct MeasurementArc {
    double radius = 1500.0;
    double theta_bar = 0.0;
    double delta_theta = kPi / 4;
};

struct Discretization {
    int basis = 10;            // N per particle
    int quadrature = 0;        // N_q; 0 picks max(64, 4N) rounded up to a multiple of N
    int arc_nodes = 129;       // N_Theta
    int circle_nodes = 256;    // full-circle nodes for Qs
    int series_terms = 0;      // 0 adapts to rho
    int kappa_nodes = 0;       // 0 adapts to rho
    bool log_corrected = true; // product rule for the log part of the smooth remainder
};

// Physical problem shared by every solve.
struct Setup {
    ParticleMaterial material{};
    BackgroundMedium medium{};
    double incident_angle = 0.0; // theta_0
    MeasurementArc arc{};
    Discretization disc{};
    int threads = 0;
};

void validate(const Setup& s);

int quadrature_nodes(const Discretization& d);
// Weights for int ln(4 sin^2((t_p - s)/2)) f(s) ds on the uniform grid, indexed by (q - p) mod n.
std::vector<double> log_quadrature_weights(int nodes);

struct ParticleCache {
    EllipseParams w;
    SpectralBasis basis;
    std::vector<BoundarySample> nodes;
    std::vector<ShapeJacobians> jac;
    Eigen::MatrixXd trig;   // Nq x N, trig_i(s_q) = |x'| psi_i
    Eigen::MatrixXd qbasis; // Nq x N, trig_i Xi
    // singular actions at collocation nodes, N x N (row j, column i)
    Eigen::MatrixXd S, K, psi, Sa, Ka, qc;
    // operator derivatives of the singular parts at all quadrature nodes, slots a and b
    Eigen::MatrixXd dS[2], dK[2];
};

struct DesignCache {
    Discretization disc;
    int N = 0, Nq = 0, stride = 0;
    bool with_derivatives = false;
    std::vector<ParticleCache> particles;
    std::vector<double> logw;
    int M() const { return static_cast<int>(particles.size()); }
};

DesignCache build_cache(const DesignConfig& cfg, const Discretization& disc, bool with_derivatives, int threads = 1);

struct WaveContext {
    double lambda;
    Wavenumbers k;
    Vec2 d; // incident direction
};
WaveContext wave_context(const Setup& s, double lambda);

cplx incident_field(const WaveContext& wc, Vec2 x);

} // namespace plasmo
