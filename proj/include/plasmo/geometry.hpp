/*
 * include/plasmo/geometry.hpp
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

#include <array>
#include <vector>

#include "plasmo/common.hpp"

namespace plasmo {

struct Vec2 {
    double x = 0.0, y = 0.0;
};
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 a);

// Parameter slots in the order (a, b, theta, x1, x2).
inline constexpr int kSlots = 5;
using Slots = std::array<double, kSlots>;

struct EllipseParams {
    double a = 10.0;
    double b = 4.0;
    double theta = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
};

struct EllipticData {
    double c;
    double rho;
};

struct DesignBounds {
    double a_min = 8.0, a_max = 20.0;
    double eta_min = 0.1, eta_max = 0.9;
};

struct DesignConfig {
    std::vector<EllipseParams> particles;
    DesignBounds bounds{};
    double spacing1 = 80.0, spacing2 = 80.0;
};

struct SpeedNormal {
    double speed;
    Vec2 normal;
};

struct ShapeJacobians {
    std::array<Vec2, kSlots> dx;
    Slots dspeed;
    std::array<Vec2, kSlots> dnormal;
    Slots dc;
    Slots drho;
};

// Everything the assemblers need about one boundary node.
struct BoundarySample {
    double t;
    Vec2 x;
    double speed;
    Vec2 normal;
    Vec2 accel; // x''(t)
};

void validate(const EllipseParams& w);
void validate(const DesignConfig& cfg, bool check_bounds);

Vec2 boundary_point(const EllipseParams& w, double t);
SpeedNormal speed_and_normal(const EllipseParams& w, double t);
EllipticData elliptic_data(const EllipseParams& w);
double metric_xi(const EllipticData& d, double t);
ShapeJacobians shape_jacobians(const EllipseParams& w, double t);
BoundarySample sample(const EllipseParams& w, double t);
// Nodes t_j = 2 pi j / n.
std::vector<BoundarySample> sample_uniform(const EllipseParams& w, int n);

std::vector<double> to_vector(const DesignConfig& cfg);
void from_vector(DesignConfig& cfg, const std::vector<double>& v);

} // namespace plasmo
