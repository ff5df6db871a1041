/*
 * tests/test_kernels.cpp
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

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <random>

#include "plasmo/kernels.hpp"

using namespace plasmo;
using ld = long double;
using cld = std::complex<long double>;

namespace {

// Laplace-type integral for H_nu, integrated adaptively in long double.
cld hankel_oracle(int nu, cld z) {
    boost::math::quadrature::exp_sinh<ld> integrator;
    const cld c = cld(0, 1) / (ld(2) * z);
    auto f = [&](ld v, bool imag) {
        const cld s = std::sqrt(ld(1) + c * v * v);
        const cld val = nu == 0 ? std::exp(-v * v) / s : v * v * std::exp(-v * v) * s;
        return imag ? val.imag() : val.real();
    };
    const ld re = integrator.integrate([&](ld v) { return f(v, false); }, ld(0), std::numeric_limits<ld>::infinity());
    const ld im = integrator.integrate([&](ld v) { return f(v, true); }, ld(0), std::numeric_limits<ld>::infinity());
    const ld pi = 3.14159265358979323846264338327950288L;
    const ld scale = (nu == 0 ? ld(2) : ld(4)) / std::sqrt(pi);
    const cld pre = std::sqrt(ld(2) / (pi * z)) * std::exp(cld(0, 1) * (z - ld(nu) * pi / 2 - pi / 4));
    return pre * scale * cld(re, im);
}

ld y0_series(ld x) {
    const ld q = x * x / 4;
    ld t = 1, j0 = 1, s = 0, h = 0;
    for (int k = 1; k < 80; ++k) {
        t *= -q / (ld(k) * k);
        h += ld(1) / k;
        j0 += t;
        s -= h * t;
    }
    const ld pi = 3.14159265358979323846264338327950288L;
    return (2 / pi) * ((std::log(x / 2) + 0.5772156649015328606065L) * j0 + s);
}

} // namespace

TEST_CASE("hankel on the positive real axis") {
    for (int i = 0; i <= 240; ++i) {
        const double z = std::pow(10.0, -6.0 + 9.0 * i / 240.0);
        const HankelPair h = hankel_h0_h1(z);
        const ld j0 = boost::math::cyl_bessel_j(0, ld(z)), y0 = boost::math::cyl_neumann(0, ld(z));
        const ld j1 = boost::math::cyl_bessel_j(1, ld(z)), y1 = boost::math::cyl_neumann(1, ld(z));
        const cplx r0{double(j0), double(y0)}, r1{double(j1), double(y1)};
        CHECK(std::abs(h.h0 - r0) <= 1e-12 * std::abs(r0));
        CHECK(std::abs(h.h1 - r1) <= 1e-12 * std::abs(r1));
    }
    for (double z : {0.5, 1.0, 2.0}) CHECK(std::abs(hankel_h0_h1(z).h0.imag() - double(y0_series(z))) < 1e-14);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.01, 60.0);
    for (int i = 0; i < 20; ++i) {
        const double z = U(rng);
        const HankelPair h = hankel_h0_h1(z);
        const double w = h.h0.real() * h.h1.imag() - h.h1.real() * h.h0.imag();
        CHECK(w == doctest::Approx(-2.0 / (kPi * z)).epsilon(1e-12));
    }
    const cplx big = hankel_h0_h1(500.0).h0;
    const cplx asym = std::sqrt(2.0 / (kPi * 500.0)) * std::exp(cplx(0, 500.0 - kPi / 4));
    CHECK(std::abs(big - asym) < 1e-3 * std::abs(asym));
    CHECK_THROWS_AS(hankel_h0_h1(0.0), Error);
    CHECK_THROWS_AS(hankel_h0_h1(-1.0), Error);
}

TEST_CASE("hankel for complex arguments in the first quadrant") {
    for (double mod : {0.05, 0.7, 1.9, 2.1, 3.5, 5.0, 6.9, 7.1, 10.0, 18.5, 19.5, 40.0}) {
        for (int a = 0; a <= 8; ++a) {
            const double arg = 0.5 * kPi * a / 8;
            const cplx z = std::polar(mod, arg);
            const HankelPair h = hankel_h0_h1(z);
            const cld zl(z.real(), z.imag());
            const cld o0 = hankel_oracle(0, zl), o1 = hankel_oracle(1, zl);
            const cplx r0(double(o0.real()), double(o0.imag())), r1(double(o1.real()), double(o1.imag()));
            // the power series loses digits to cancellation when the value is exponentially small
            const double tol = (std::abs(z) + z.imag() <= 7.0) ? 1e-16 * std::exp(std::abs(z) + z.imag()) + 1e-13 : 1e-12;
            CHECK(std::abs(h.h0 - r0) <= tol * std::abs(r0));
            CHECK(std::abs(h.h1 - r1) <= tol * std::abs(r1));
        }
    }
}

TEST_CASE("green functions and the smooth remainder") {
    for (double k : {0.01, 0.05, 1.0}) {
        for (double r : {1.0, 10.0, 300.0}) {
            CHECK(std::abs(green_helmholtz(r, -k) - std::conj(green_helmholtz(r, k))) < 1e-15);
        }
    }
    CHECK(std::abs(green_helmholtz(1.0, 1.0) - (-0.25 * cplx(0, 1) * hankel_h0_h1(1.0).h0)) < 1e-16);
    const double ratio = std::abs(green_helmholtz(1e3, 0.05)) / std::abs(green_helmholtz(4e3, 0.05));
    CHECK(ratio == doctest::Approx(2.0).epsilon(1e-3));
    CHECK_THROWS_AS(green_helmholtz(0.0, 1.0), Error);

    const Radial z0 = smooth_radial(0.0, 2.0);
    CHECK(std::abs(z0.v - cplx(kEulerGamma / (2 * kPi), -0.25)) < 1e-16);
    CHECK(smooth_radial(0.0, cplx(0.03, 0.1)).d1 == cplx(0.0, 0.0));

    for (cplx k : {cplx(0.02, 0), cplx(0.01, 0.1), cplx(0.2, 0)}) {
        for (int i = 0; i <= 60; ++i) {
            const double r = std::pow(10.0, -4.0 + 6.0 * i / 60.0);
            const Radial s = smooth_radial(r, k);
            const cplx g = green_helmholtz(r, k);
            CHECK(std::abs(s.v + std::log(r) / (2 * kPi) - g) <= 1e-12 * std::max(std::abs(g), 1.0));
            // first and second derivatives by central differences
            const double h = 1e-5 * r;
            const Radial p = smooth_radial(r + h, k), m = smooth_radial(r - h, k);
            const double noise = 1e-15 * std::max(std::abs(s.v), 1.0) / h;
            CHECK(std::abs((p.v - m.v) / (2 * h) - s.d1) <= 1e-6 * (std::abs(s.d1) + std::abs(k * k) * r) + noise);
            CHECK(std::abs((p.d1 - m.d1) / (2 * h) - s.d2) <= 1e-5 * (std::abs(s.d2) + std::abs(k * k)) + 1e-15 * std::abs(k) / h);
        }
    }
    // continuity where the evaluation branch changes, |kr| + Im(kr) = 7
    for (cplx k : {cplx(0.01, 0), cplx(0.004, 0.003)}) {
        const double rs = 7.0 / (std::abs(k) + k.imag());
        const Radial lo = smooth_radial(rs * (1 - 1e-13), k), hi = smooth_radial(rs * (1 + 1e-13), k);
        CHECK(std::abs(lo.v - hi.v) <= 1e-10);
        CHECK(std::abs(lo.d1 - hi.d1) <= 1e-10 * std::abs(k));
    }
    // ghat'' diverges logarithmically at the origin
    double prev = 0.0;
    for (int e = 2; e <= 8; ++e) {
        const double v = std::abs(smooth_radial(std::pow(10.0, -e), cplx(0.05, 0.0)).d2);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("normal derivative kernel parts") {
    const auto perp = normal_derivative_kernel({0.0, 2.0}, {1.0, 0.0}, 0.05);
    CHECK(std::abs(perp.smooth.value) == 0.0);
    CHECK(perp.laplace.value == 0.0);
    const auto lim = normal_derivative_kernel({0.0, 0.0}, {1.0, 0.0}, 0.05, true);
    CHECK(lim.smooth.is_diagonal_limit);
    CHECK(std::abs(lim.smooth.value) == 0.0);
    CHECK_THROWS_AS(normal_derivative_kernel({0.0, 0.0}, {1.0, 0.0}, 0.05), Error);

    const EllipseParams w{10, 4, 0.7, 1, 2};
    for (double t : {0.0, 0.9, 2.5}) {
        const BoundarySample x = sample(w, t);
        double acc = 0.0;
        for (double d : {-1e-4, 1e-4}) {
            const BoundarySample y = sample(w, t + d);
            const auto kk = normal_derivative_kernel(x.x - y.x, x.normal, 0.05);
            acc += 0.5 * kk.laplace.value.real() * y.speed;
        }
        CHECK(acc == doctest::Approx(laplace_normal_diagonal(x)).epsilon(1e-6));
    }
}
