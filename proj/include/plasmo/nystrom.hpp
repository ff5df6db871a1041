/*
 * include/plasmo/nystrom.hpp
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

#include "plasmo/adjoint_rbm.hpp"
#include "plasmo/observables.hpp"

namespace plasmo {

struct NystromGrid {
    int n = 200; // nodes per particle
    std::vector<double> nodes, weights;
    std::vector<double> log_weights; // indexed by (j - i) mod n
};
NystromGrid make_nystrom_grid(int n);

// Nodal densities, particle-major. Forward: (interior, exterior); adjoint: (p, q).
struct NystromSolution {
    int M = 0, n = 0;
    std::vector<BoundarySample> samples;
    Eigen::VectorXcd first, second;
    double residual = 0.0, rcond = 0.0;
};

NystromSolution solve_forward_nystrom(const DesignConfig& cfg, const WaveContext& wc, int n = 200);
// g2 sampled at the Nystrom nodes (length M n).
NystromSolution solve_adjoint_nystrom(const DesignConfig& cfg, const WaveContext& wc, const Eigen::VectorXcd& g2,
                                      int n = 200);

SourceSamples exterior_sources(const NystromSolution& sol);
// Adjoint data computed from the Nystrom forward solution.
Eigen::VectorXcd nystrom_adjoint_rhs(const NystromSolution& fwd, const WaveContext& wc, const Setup& s);

// Trigonometric interpolation of nodal values of one particle at parameter t.
cplx trig_interpolate(const Eigen::VectorXcd& values, int offset, int n, double t);

// RBM against Nystrom at one wavelength. Density errors are relative L2 over the Nystrom nodes.
struct SolverComparison {
    double lambda = 0.0;
    double qe_rbm = 0.0, qe_nystrom = 0.0, qe_rel = 0.0;
    double p_rel = 0.0, q_rel = 0.0;
};
SolverComparison compare_solvers(const DesignConfig& cfg, const Setup& s, double lambda, int n = 200);

} // namespace plasmo
