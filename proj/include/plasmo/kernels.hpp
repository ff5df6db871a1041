/*
 * include/plasmo/kernels.hpp
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

#include <utility>

#include "plasmo/common.hpp"
#include "plasmo/geometry.hpp"

namespace plasmo {

struct HankelPair {
    cplx h0;
    cplx h1;
};

// First-kind Hankel functions of order 0 and 1 for 0 <= arg z <= pi/2, z != 0.
HankelPair hankel_h0_h1(cplx z);
HankelPair hankel_h0_h1(double z);

// J0, J1 by power series. Intended for |z| below about 10.
std::pair<cplx, cplx> bessel_j0_j1(cplx z);

// Radial profile of a kernel: value and first two r-derivatives.
struct Radial {
    cplx v;
    cplx d1;
    cplx d2;
};

// g(r;k) = -(i/4) H0(kr) and its r-derivatives, r > 0.
Radial helmholtz_radial(double r, cplx k);
// ghat(r;k) = g(r;k) - ln(r)/(2 pi). At r = 0 returns the limit values; d2 is left at zero there.
Radial smooth_radial(double r, cplx k);

cplx green_helmholtz(double r, cplx k);
double green_laplace(double r);
cplx ghat_zero(cplx k);

struct KernelEval {
    cplx value;
    bool is_diagonal_limit;
};

struct NormalDerivativeParts {
    KernelEval smooth;   // ghat'(|z|) (zhat . nu)
    KernelEval laplace;  // (zhat . nu) / (2 pi |z|)
};

NormalDerivativeParts normal_derivative_kernel(Vec2 z, Vec2 nu, cplx k, bool diagonal_limit = false);
// Laplace double-layer adjoint kernel at t = s, per unit parameter length with the |y'| weight.
double laplace_normal_diagonal(const BoundarySample& s);

} // namespace plasmo

namespace plasmo {

// J0(z) - 1 and J1(z) from the power series, without cancellation at small z.
std::pair<cplx, cplx> bessel_j0m1_j1(cplx z);

// Smooth remainder kernels on one particle split as smooth + log_part * ln(4 sin^2((t - s)/2)).
struct SplitKernel {
    cplx smooth;
    cplx log_part;
};

struct SelfPoint {
    double r;
    Radial ghat;
    cplx j0m1;
    cplx j1_over_r;
    double log_sin;  // ln(4 sin^2((t - s)/2))
};

// dt = t - s; r = |x(t) - x(s)| > 0.
SelfPoint self_point(double r, double dt, cplx k);
SplitKernel split_single(const SelfPoint& p);
// zn = z . nu for the chosen normal.
SplitKernel split_normal(const SelfPoint& p, double zn, cplx k);

} // namespace plasmo
