/*
 * include/plasmo/adjoint_rbm.hpp
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

#include "plasmo/forward_rbm.hpp"
#include "plasmo/observables.hpp"

namespace plasmo {

struct AdjointSystem {
    Eigen::MatrixXcd T1, T2;
    Eigen::VectorXcd g; // g1 block is identically zero
    int M = 0, N = 0;
};

// g2 at arbitrary boundary points from the far field of `src`.
Eigen::VectorXcd adjoint_rhs(const SourceSamples& src, const std::vector<BoundarySample>& targets,
                             const WaveContext& wc, const Setup& s);
// g2 at the collocation nodes of every particle (length M N).
Eigen::VectorXcd adjoint_rhs(const DensitySolution& fwd, const DesignCache& cache, const WaveContext& wc,
                             const Setup& setup);
AdjointSystem assemble_adjoint(const DesignCache& cache, const WaveContext& wc);
DensitySolution solve_adjoint(const AdjointSystem& sys, double lambda);

struct AdjointValues {
    cplx p, q;
};
AdjointValues reconstruct_adjoint(const DensitySolution& sol, const DesignCache& cache, int particle, double t);

} // namespace plasmo
