/*
 * include/plasmo/forward_rbm.hpp
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

#include "plasmo/discretization.hpp"

namespace plasmo {

struct ForwardSystem {
    Eigen::MatrixXcd M1, M2;
    Eigen::VectorXcd f;
    std::vector<double> collocation_nodes;
    int M = 0, N = 0;
};

// Forward: c_phi interior (k_c) and c_varphi exterior (k_m) coefficients.
// Adjoint: c_phi holds d^p, c_varphi holds d^q.
struct DensitySolution {
    Eigen::VectorXcd c_phi, c_varphi;
    int M = 0, N = 0;
    bool adjoint = false;
    double residual = 0.0;
    double rcond = 0.0;
};

struct AdjointSystem;

ForwardSystem assemble_forward(const DesignCache& cache, const WaveContext& wc);
DensitySolution solve_forward(const ForwardSystem& sys, double lambda);

// Both operator families share the kernel evaluations.
void assemble_systems(const DesignCache& cache, const WaveContext& wc, ForwardSystem* fwd, AdjointSystem* adj);

struct DensityValues {
    cplx phi, varphi;
};
DensityValues reconstruct_density(const DensitySolution& sol, const DesignCache& cache, int particle, double t);

// Block dense direct solve shared by both systems.
Eigen::VectorXcd dense_solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double lambda, double& residual,
                             double& rcond);

} // namespace plasmo
