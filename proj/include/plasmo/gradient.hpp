/*
 * include/plasmo/gradient.hpp
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

#include "plasmo/adjoint_rbm.hpp"
#include "plasmo/observables.hpp"

namespace plasmo {

// Slot order per particle: (a, b, theta, x1, x2).
std::vector<double> dA_dw(const DensitySolution& fwd, const DesignCache& cache, const WaveContext& wc,
                          const Setup& s);

struct OperatorTerms {
    std::vector<cplx> E; // <p, E_w>_V per slot
    std::vector<cplx> F; // <q, F_w>_V per slot
};
// Needs a cache built with derivatives.
OperatorTerms operator_derivative_terms(const DensitySolution& fwd, const DensitySolution& adj,
                                        const DesignCache& cache, const WaveContext& wc);

// Everything the gradient needs at one wavelength.
struct WavelengthTerms {
    double A = 0.0;
    std::vector<double> G; // A_w - Re(<p, E_w> + <q, F_w>)
};
WavelengthTerms wavelength_terms(const DesignCache& cache, const Setup& s, double lambda);

struct GradientResult {
    std::vector<double> grad; // 5M
    double objective = 0.0;
    std::vector<double> A;
};
GradientResult full_gradient(const DesignConfig& cfg, const Setup& s, const TargetSpectrum& target);
// Objective only, same discretization as full_gradient.
double objective_value(const DesignConfig& cfg, const Setup& s, const TargetSpectrum& target);

} // namespace plasmo
