/*
 * src/optimizer.cpp
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

#include "plasmo/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace plasmo {

double clamp_to(double x, double lo, double hi) { return std::max(lo, std::min(x, hi)); }

DesignConfig project(const DesignConfig& cfg) {
    DesignConfig out = cfg;
    const DesignBounds& B = cfg.bounds;
    for (auto& w : out.particles) {
        const double eta = w.b / w.a;
        w.a = clamp_to(w.a, B.a_min, B.a_max);
        w.theta = clamp_to(w.theta, 0.0, 2.0 * kPi);
        w.b = clamp_to(eta, B.eta_min, B.eta_max) * w.a;
    }
    return out;
}

std::vector<std::pair<int, int>> overlapping_pairs(const DesignConfig& cfg) {
    std::vector<std::pair<int, int>> out;
    const auto& p = cfg.particles;
    for (std::size_t m = 0; m < p.size(); ++m)
        for (std::size_t n = m + 1; n < p.size(); ++n)
            if (std::hypot(p[m].x1 - p[n].x1, p[m].x2 - p[n].x2) < p[m].a + p[n].a)
                out.emplace_back(static_cast<int>(m), static_cast<int>(n));
    return out;
}

static double inf_norm(const std::vector<double>& g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
}

static void evaluate(OptimizationState& st, const Setup& s, const TargetSpectrum& target) {
    const GradientResult r = full_gradient(st.config, s, target);
    st.objective = r.objective;
    st.gradient = r.grad;
    st.gradient_norm = inf_norm(r.grad);
    st.history.push_back({st.iteration, st.objective, st.gradient_norm});
}

OptimizationState initial_state(const DesignConfig& cfg, const Setup& s, const TargetSpectrum& target) {
    validate(cfg, true);
    OptimizationState st;
    st.config = cfg;
    evaluate(st, s, target);
    return st;
}

OptimizationState step(const OptimizationState& state, const Setup& s, const TargetSpectrum& target,
                       const OptimizerOptions& opt) {
    if (!(opt.step > 0.0)) fail_argument("step size must be positive");
    if (state.gradient.size() != 5 * state.config.particles.size()) fail_argument("state has no gradient");
    const std::vector<double> w = to_vector(state.config);
    double beta = opt.step;
    for (int tries = 0;; ++tries) {
        std::vector<double> v(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] - beta * state.gradient[i];
        OptimizationState next;
        next.iteration = state.iteration + 1;
        next.config = state.config;
        from_vector(next.config, v);
        next.config = project(next.config);
        if (opt.backtracking && tries < opt.max_halvings) {
            const double J = objective_value(next.config, s, target);
            if (J > state.objective) {
                beta *= 0.5;
                continue;
            }
        }
        next.history = state.history;
        evaluate(next, s, target);
        return next;
    }
}

OptimizationState run(const DesignConfig& initial, const Setup& s, const TargetSpectrum& target,
                      const OptimizerOptions& opt, const std::function<void(const OptimizationState&)>& on_record) {
    if (opt.iterations < 0) fail_argument("iteration count must be non-negative");
    OptimizationState st = initial_state(initial, s, target);
    if (on_record) on_record(st);
    for (int i = 0; i < opt.iterations; ++i) {
        st = step(st, s, target, opt);
        if (on_record) on_record(st);
    }
    return st;
}

} // namespace plasmo
