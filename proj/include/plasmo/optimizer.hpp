/*
 * include/plasmo/optimizer.hpp
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

#include <functional>
#include <utility>
#include <vector>

#include "plasmo/gradient.hpp"

namespace plasmo {

struct HistoryRecord {
    int iteration = 0;
    double objective = 0.0;
    double grad_inf_norm = 0.0;
};

struct OptimizationState {
    int iteration = 0;
    DesignConfig config;
    double objective = 0.0;
    double gradient_norm = 0.0; // infinity norm
    std::vector<double> gradient;
    std::vector<HistoryRecord> history;
};

struct OptimizerOptions {
    double step = 0.2;
    int iterations = 1000;
    bool backtracking = false; // halve the step until J does not increase
    int max_halvings = 20;
};

// Clamp a, then theta to [0, 2 pi], then eta = b/a; b is rebuilt as eta * a. Positions are untouched.
DesignConfig project(const DesignConfig& cfg);
double clamp_to(double x, double lo, double hi);

// Pairs whose circumscribed circles intersect.
std::vector<std::pair<int, int>> overlapping_pairs(const DesignConfig& cfg);

OptimizationState initial_state(const DesignConfig& cfg, const Setup& s, const TargetSpectrum& target);
OptimizationState step(const OptimizationState& state, const Setup& s, const TargetSpectrum& target,
                       const OptimizerOptions& opt);
// on_record sees every history entry as soon as it exists.
OptimizationState run(const DesignConfig& initial, const Setup& s, const TargetSpectrum& target,
                      const OptimizerOptions& opt,
                      const std::function<void(const OptimizationState&)>& on_record = {});

} // namespace plasmo
