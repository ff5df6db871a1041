/*
 * src/kernels.cpp
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

#include "plasmo/kernels.hpp"

#include <cmath>

namespace plasmo {

namespace {

const cplx I(0.0, 1.0);

struct SeriesTerms {
    cplx j0, j1, s0, p, j0m1;
};

// q = z^2/4. s0 is the Y0 tail sum, p the Y1 digamma sum.
SeriesTerms series(cplx z) {
    const cplx q = 0.25 * z * z;
    cplx t = 1.0, u = 1.0;
    cplx j0m1 = 0.0, s0 = 0.0, p = 0.0, j1s = 1.0;
    double hk = 0.0;
    const double psi1 = -kEulerGamma, psi2 = 1.0 - kEulerGamma;
    p = psi1 + psi2;
    for (int k = 1; k < 200; ++k) {
        t *= -q / double(k * k);
        u *= -q / double(k * (k + 1));
        hk += 1.0 / k;
        j0m1 += t;
        s0 -= hk * t;
        j1s += u;
        p += (2.0 * (hk - kEulerGamma) + 1.0 / (k + 1)) * u;
        // squared magnitudes avoid hypot in the hot loop
        const double nt = std::norm(t) * (1.0 + hk) * (1.0 + hk);
        const double nu = std::norm(u) * 4.0 * (1.0 + hk) * (1.0 + hk);
        if (nt < 1e-36 * std::norm(j0m1) && nu < 1e-36 * std::norm(j1s)) break;
        if (nt < 1e-300) break;
    }
    return {1.0 + j0m1, 0.5 * z * j1s, s0, p, j0m1};
}

bool use_series(cplx z) { return std::abs(z) + z.imag() <= 7.0; }

HankelPair from_series(cplx z) {
    const SeriesTerms s = series(z);
    const cplx lz = std::log(0.5 * z);
    const cplx y0 = (2.0 / kPi) * ((lz + kEulerGamma) * s.j0 + s.s0);
    const cplx y1 = -2.0 / (kPi * z) + (2.0 / kPi) * lz * s.j1 - (0.5 / kPi) * z * s.p;
    return {s.j0 + I * y0, s.j1 + I * y1};
}

// H_nu(z) = sqrt(2/(pi z)) e^{i(z - nu pi/2 - pi/4)} I_nu(z) with I_nu a Gaussian-weighted integral,
// summed by the trapezoid rule on the real line.
HankelPair from_integral(cplx z) {
    const double az = std::abs(z);
    const double d = std::min(0.9 * std::sqrt(az), 2.5);
    const double h = 2.0 * kPi * d / (39.0 + d * d);
    const cplx c = I / (2.0 * z);
    cplx i0 = 0.5, i1 = 0.0;
    const double h2 = h * h;
    double e = 1.0, step = std::exp(-h2), step2 = std::exp(-2.0 * h2);
    for (int j = 1;; ++j) {
        e *= step;
        step *= step2;
        const double v2 = h2 * j * j;
        if (e * (1.0 + v2) < 1e-19) break;
        const cplx s = std::sqrt(1.0 + c * v2);
        i0 += e / s;
        i1 += e * v2 * s;
    }
    const double rs = 1.0 / std::sqrt(kPi);
    i0 *= 2.0 * h * rs;
    i1 *= 4.0 * h * rs;
    const cplx pre = std::sqrt(2.0 / (kPi * z));
    const cplx ph0 = std::exp(I * (z - 0.25 * kPi));
    return {pre * ph0 * i0, pre * ph0 * (-I) * i1};
}

HankelPair from_asymptotic(cplx z) {
    cplx s0 = 1.0, s1 = 1.0;
    cplx a0 = 1.0, a1 = 1.0;
    const cplx iz = I / z;
    double last0 = 1.0, last1 = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = double(2 * k - 1) * (2 * k - 1);
        const cplx n0 = a0 * ((0.0 - odd) / (8.0 * k)) * iz;
        const cplx n1 = a1 * ((4.0 - odd) / (8.0 * k)) * iz;
        const double m0 = std::abs(n0), m1 = std::abs(n1);
        if (m0 > last0 && m1 > last1) break;
        a0 = n0;
        a1 = n1;
        s0 += a0;
        s1 += a1;
        last0 = m0;
        last1 = m1;
        if (m0 < 1e-18 && m1 < 1e-18) break;
    }
    const cplx pre = std::sqrt(2.0 / (kPi * z));
    const cplx ph0 = std::exp(I * (z - 0.25 * kPi));
    return {pre * ph0 * s0, pre * ph0 * (-I) * s1};
}

} // namespace

HankelPair hankel_h0_h1(cplx z) {
    if (!(std::abs(z) > 0.0)) fail_argument("Hankel argument must be non-zero");
    if (use_series(z)) return from_series(z);
    if (std::abs(z) < 19.0) return from_integral(z);
    return from_asymptotic(z);
}

HankelPair hankel_h0_h1(double z) {
    if (!(z > 0.0)) fail_argument("Hankel argument must be positive");
    return hankel_h0_h1(cplx(z, 0.0));
}

std::pair<cplx, cplx> bessel_j0_j1(cplx z) {
    const SeriesTerms s = series(z);
    return {s.j0, s.j1};
}

Radial helmholtz_radial(double r, cplx k) {
    if (!(r > 0.0)) fail_argument("Helmholtz kernel needs r > 0");
    const HankelPair h = hankel_h0_h1(k * r);
    Radial out;
    out.v = -0.25 * I * h.h0;
    out.d1 = 0.25 * I * k * h.h1;
    out.d2 = -k * k * out.v - out.d1 / r;
    return out;
}

cplx ghat_zero(cplx k) { return -(0.25 * I - kEulerGamma / (2.0 * kPi) - std::log(0.5 * k) / (2.0 * kPi)); }

namespace {

Radial smooth_from_series(const SeriesTerms& s, double r, cplx k) {
    const double inv2pi = 1.0 / (2.0 * kPi);
    const cplx z = k * r;
    const double lr = std::log(r);
    const cplx lz = std::log(0.5 * z);
    Radial out;
    out.v = -0.25 * I * s.j0 + inv2pi * (std::log(0.5 * k) + kEulerGamma) * s.j0 + inv2pi * s.j0m1 * lr +
            inv2pi * s.s0;
    out.d1 = 0.25 * I * k * s.j1 - k * inv2pi * lz * s.j1 + (k * 0.5 * inv2pi) * (0.5 * z) * s.p;
    out.d2 = -k * k * (out.v + inv2pi * lr) - out.d1 / r;
    return out;
}

} // namespace

Radial smooth_radial(double r, cplx k) {
    if (r == 0.0) return {ghat_zero(k), 0.0, 0.0};
    if (!(r > 0.0)) fail_argument("kernel distance must be non-negative");
    const cplx z = k * r;
    const double inv2pi = 1.0 / (2.0 * kPi);
    Radial out;
    if (use_series(z)) return smooth_from_series(series(z), r, k);
    const Radial g = helmholtz_radial(r, k);
    out.v = g.v - inv2pi * std::log(r);
    out.d1 = g.d1 - inv2pi / r;
    out.d2 = g.d2 + inv2pi / (r * r);
    return out;
}

cplx green_helmholtz(double r, cplx k) { return helmholtz_radial(r, k).v; }

double green_laplace(double r) {
    if (!(r > 0.0)) fail_argument("Laplace kernel needs r > 0");
    return std::log(r) / (2.0 * kPi);
}

NormalDerivativeParts normal_derivative_kernel(Vec2 z, Vec2 nu, cplx k, bool diagonal_limit) {
    const double r = norm(z);
    if (r == 0.0) {
        if (!diagonal_limit) fail_argument("normal derivative kernel at coincident points needs the limit flag");
        return {{0.0, true}, {0.0, true}};
    }
    const double zn = dot(z, nu) / r;
    const Radial g = smooth_radial(r, k);
    return {{g.d1 * zn, false}, {zn / (2.0 * kPi * r), false}};
}

double laplace_normal_diagonal(const BoundarySample& s) {
    return -dot(s.accel, s.normal) / (4.0 * kPi * s.speed);
}

} // namespace plasmo

namespace plasmo {

std::pair<cplx, cplx> bessel_j0m1_j1(cplx z) {
    // J0 - 1 summed from the tail keeps full relative accuracy for small arguments
    const SeriesTerms s = series(z);
    return {s.j0m1, s.j1};
}

SelfPoint self_point(double r, double dt, cplx k) {
    SelfPoint p;
    p.r = r;
    const cplx z = k * r;
    const SeriesTerms st = series(z);
    p.ghat = use_series(z) ? smooth_from_series(st, r, k) : smooth_radial(r, k);
    p.j0m1 = st.j0m1;
    p.j1_over_r = st.j1 / r;
    const double s = 2.0 * std::sin(0.5 * dt);
    p.log_sin = std::log(s * s);
    return p;
}

SplitKernel split_single(const SelfPoint& p) {
    const cplx lg = p.j0m1 / (4.0 * kPi);
    return {p.ghat.v - lg * p.log_sin, lg};
}

SplitKernel split_normal(const SelfPoint& p, double zn, cplx k) {
    const cplx value = p.ghat.d1 / p.r * zn;
    const cplx lg = -(k / (4.0 * kPi)) * p.j1_over_r * zn;
    return {value - lg * p.log_sin, lg};
}

} // namespace plasmo
