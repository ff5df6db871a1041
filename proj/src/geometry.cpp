/*
 * src/geometry.cpp
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

#include "plasmo/geometry.hpp"

#include <cmath>
#include <string>

namespace plasmo {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

static Vec2 rotate(double th, Vec2 v) {
    const double c = std::cos(th), s = std::sin(th);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}
static Vec2 quarter(Vec2 v) { return {-v.y, v.x}; }

void validate(const EllipseParams& w) {
    if (!std::isfinite(w.a) || !std::isfinite(w.b) || !std::isfinite(w.theta) || !std::isfinite(w.x1) ||
        !std::isfinite(w.x2))
        fail_argument("ellipse parameters must be finite");
    if (!(w.b > 0.0)) fail_argument("semi-minor axis must be positive");
    if (!(w.a >= w.b * (1.0 + 1e-9))) fail_argument("ellipse needs a > b strictly");
}

void validate(const DesignConfig& cfg, bool check_bounds) {
    if (cfg.particles.empty()) fail_argument("design needs at least one particle");
    const auto& B = cfg.bounds;
    for (std::size_t m = 0; m < cfg.particles.size(); ++m) {
        const auto& w = cfg.particles[m];
        validate(w);
        if (check_bounds) {
            const double eta = w.b / w.a;
            const double tol = 1e-12;
            if (w.a < B.a_min - tol || w.a > B.a_max + tol || eta < B.eta_min - tol || eta > B.eta_max + tol)
                fail_argument("particle " + std::to_string(m) + " outside design bounds");
        }
    }
}

Vec2 boundary_point(const EllipseParams& w, double t) {
    return rotate(w.theta, {w.a * std::cos(t), w.b * std::sin(t)}) + Vec2{w.x1, w.x2};
}

SpeedNormal speed_and_normal(const EllipseParams& w, double t) {
    const double st = std::sin(t), ct = std::cos(t);
    const double sp = std::sqrt(w.a * w.a * st * st + w.b * w.b * ct * ct);
    const Vec2 n = rotate(w.theta, {w.b * ct / sp, w.a * st / sp});
    return {sp, n};
}

EllipticData elliptic_data(const EllipseParams& w) {
    if (!(w.a > w.b) || !(w.b > 0.0)) fail_argument("elliptic data needs a > b > 0");
    const double c = std::sqrt((w.a - w.b) * (w.a + w.b));
    return {c, std::log((w.a + w.b) / c)};
}

double metric_xi(const EllipticData& d, double t) {
    const double sh = std::sinh(d.rho), s = std::sin(t);
    return d.c * std::sqrt(sh * sh + s * s);
}

ShapeJacobians shape_jacobians(const EllipseParams& w, double t) {
    const double st = std::sin(t), ct = std::cos(t);
    const double a = w.a, b = w.b;
    const double sp = std::sqrt(a * a * st * st + b * b * ct * ct);
    ShapeJacobians J{};
    J.dx[0] = rotate(w.theta, {ct, 0.0});
    J.dx[1] = rotate(w.theta, {0.0, st});
    J.dx[2] = quarter(rotate(w.theta, {a * ct, b * st}));
    J.dx[3] = {1.0, 0.0};
    J.dx[4] = {0.0, 1.0};

    J.dspeed = {a * st * st / sp, b * ct * ct / sp, 0.0, 0.0, 0.0};

    const Vec2 nl{b * ct / sp, a * st / sp};
    const double sp3 = sp * sp * sp;
    J.dnormal[0] = rotate(w.theta, Vec2{0.0, st / sp} - (a * st * st / sp3) * Vec2{b * ct, a * st});
    J.dnormal[1] = rotate(w.theta, Vec2{ct / sp, 0.0} - (b * ct * ct / sp3) * Vec2{b * ct, a * st});
    J.dnormal[2] = quarter(rotate(w.theta, nl));
    J.dnormal[3] = {0.0, 0.0};
    J.dnormal[4] = {0.0, 0.0};

    const EllipticData d = elliptic_data(w);
    J.dc = {a / d.c, -b / d.c, 0.0, 0.0, 0.0};
    const double c2 = d.c * d.c;
    J.drho = {-b / c2, a / c2, 0.0, 0.0, 0.0};
    return J;
}

BoundarySample sample(const EllipseParams& w, double t) {
    const SpeedNormal sn = speed_and_normal(w, t);
    return {t, boundary_point(w, t), sn.speed, sn.normal,
            rotate(w.theta, {-w.a * std::cos(t), -w.b * std::sin(t)})};
}

std::vector<BoundarySample> sample_uniform(const EllipseParams& w, int n) {
    std::vector<BoundarySample> out(n);
    for (int j = 0; j < n; ++j) out[j] = sample(w, 2.0 * kPi * j / n);
    return out;
}

std::vector<double> to_vector(const DesignConfig& cfg) {
    std::vector<double> v;
    v.reserve(cfg.particles.size() * kSlots);
    for (const auto& p : cfg.particles) {
        v.push_back(p.a);
        v.push_back(p.b);
        v.push_back(p.theta);
        v.push_back(p.x1);
        v.push_back(p.x2);
    }
    return v;
}

void from_vector(DesignConfig& cfg, const std::vector<double>& v) {
    if (v.size() != cfg.particles.size() * kSlots) fail_argument("parameter vector length mismatch");
    for (std::size_t m = 0; m < cfg.particles.size(); ++m) {
        auto& p = cfg.particles[m];
        p.a = v[5 * m];
        p.b = v[5 * m + 1];
        p.theta = v[5 * m + 2];
        p.x1 = v[5 * m + 3];
        p.x2 = v[5 * m + 4];
    }
}

} // namespace plasmo
