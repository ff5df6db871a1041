/*
 * tests/test_optimizer.cpp
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

#include "doctest.h"

#include <cmath>
#include <random>

#include "plasmo/optimizer.hpp"

using namespace plasmo;

namespace {

DesignConfig pair_config() {
    DesignConfig c;
    c.particles = {{10, 4, 0.7, -20, 5}, {12, 6, 2.0, 25, -10}};
    return c;
}

bool feasible(const DesignConfig& c) {
    for (const auto& w : c.particles) {
        const double eta = w.b / w.a;
        if (w.a < c.bounds.a_min || w.a > c.bounds.a_max) return false;
        if (eta < c.bounds.eta_min - 1e-15 || eta > c.bounds.eta_max + 1e-15) return false;
        if (w.theta < 0 || w.theta > 2 * kPi) return false;
    }
    return true;
}

} // namespace

TEST_CASE("projection") {
    CHECK(clamp_to(25, 8, 20) == 20);
    CHECK(clamp_to(3, 8, 20) == 8);
    CHECK(clamp_to(11, 8, 20) == 11);

    DesignConfig c;
    c.particles = {{25, 30, -0.5, 1, 2}, {5, 0.1, 7.0, -3, 4}, {12, 6, 1.0, 0, 0}};
    const DesignConfig p = project(c);
    CHECK(p.particles[0].a == 20);
    CHECK(p.particles[0].b == doctest::Approx(0.9 * 20)); // eta = 1.2 clamps to 0.9
    CHECK(p.particles[0].theta == 0);
    CHECK(p.particles[0].x1 == 1);
    CHECK(p.particles[1].a == 8);
    CHECK(p.particles[1].b == doctest::Approx(0.1 * 8)); // eta = 0.02
    CHECK(p.particles[1].theta == 2 * kPi);
    CHECK(p.particles[2].a == 12);
    CHECK(p.particles[2].b == 6);
    CHECK(feasible(p));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-30, 30);
    for (int t = 0; t < 200; ++t) {
        DesignConfig r;
        r.particles = {{U(rng), U(rng), U(rng) / 3, U(rng), U(rng)}};
        if (r.particles[0].a == 0.0) continue;
        const DesignConfig once = project(r), twice = project(once);
        CHECK(feasible(once));
        CHECK(twice.particles[0].a == once.particles[0].a);
        CHECK(twice.particles[0].b == doctest::Approx(once.particles[0].b).epsilon(1e-15));
        CHECK(twice.particles[0].theta == once.particles[0].theta);
    }
}

TEST_CASE("overlap detection only reports") {
    DesignConfig c;
    c.particles = {{10, 4, 0, 0, 0}, {10, 4, 0, 15, 0}, {10, 4, 0, 100, 0}};
    const auto o = overlapping_pairs(c);
    REQUIRE(o.size() == 1);
    CHECK(o[0] == std::pair<int, int>{0, 1});
}

TEST_CASE("zero gradient is a fixed point") {
    Setup s;
    OptimizationState st;
    st.config = pair_config();
    st.gradient.assign(10, 0.0);
    st.objective = 1.0;
    const TargetSpectrum t = constant_target(make_grid(300, 500, 2), 0.3);
    const OptimizationState next = step(st, s, t, OptimizerOptions{});
    CHECK(to_vector(next.config) == to_vector(st.config));
    CHECK(next.iteration == 1);
}

TEST_CASE("a small step decreases the objective") {
    Setup s;
    const TargetSpectrum t = constant_target(make_grid(300, 500, 4), 0.3);
    const OptimizationState st = initial_state(pair_config(), s, t);
    OptimizerOptions o;
    o.step = 0.2;
    const OptimizationState next = step(st, s, t, o);
    CHECK(next.objective < st.objective);
    CHECK(feasible(next.config));
    CHECK(next.history.size() == 2);
}

TEST_CASE("run bookkeeping") {
    Setup s;
    const TargetSpectrum t = constant_target(make_grid(300, 500, 3), 0.3);
    OptimizerOptions o;
    o.iterations = 0;
    const OptimizationState zero = run(pair_config(), s, t, o);
    CHECK(zero.iteration == 0);
    CHECK(zero.history.size() == 1);
    CHECK(to_vector(zero.config) == to_vector(pair_config()));
    CHECK(zero.objective == doctest::Approx(objective_value(pair_config(), s, t)).epsilon(1e-14));

    o.iterations = 3;
    int seen = 0;
    const OptimizationState a = run(pair_config(), s, t, o, [&](const OptimizationState& x) {
        CHECK(x.iteration == seen++);
        CHECK(feasible(x.config));
    });
    CHECK(seen == 4);
    REQUIRE(a.history.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(a.history[i].iteration == i);
    const OptimizationState b = run(pair_config(), s, t, o);
    for (int i = 0; i < 4; ++i) {
        CHECK(a.history[i].objective == b.history[i].objective);
        CHECK(a.history[i].grad_inf_norm == b.history[i].grad_inf_norm);
    }
    CHECK(to_vector(a.config) == to_vector(b.config));
}

TEST_CASE("backtracking never increases the objective") {
    Setup s;
    const TargetSpectrum t = constant_target(make_grid(300, 500, 3), 0.3);
    OptimizerOptions o;
    o.iterations = 2;
    o.step = 50.0; // far too large without backtracking
    o.backtracking = true;
    const OptimizationState r = run(pair_config(), s, t, o);
    for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i].objective <= r.history[i - 1].objective);
}

TEST_CASE("invalid settings") {
    Setup s;
    const TargetSpectrum t = constant_target(make_grid(300, 500, 2), 0.3);
    OptimizerOptions o;
    o.iterations = -1;
    CHECK_THROWS_AS(run(pair_config(), s, t, o), Error);
    DesignConfig out = pair_config();
    out.particles[0].a = 30;
    CHECK_THROWS_AS(initial_state(out, s, t), Error);
}
