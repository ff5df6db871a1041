/*
 * tests/test_forward.cpp
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

#include "mie.hpp"
#include "plasmo/nystrom.hpp"

using namespace plasmo;

namespace {

struct Solved {
    DesignCache cache;
    WaveContext wc;
    DensitySolution sol;
};

Solved solve(const DesignConfig& cfg, const Setup& s, double lambda) {
    Solved r{build_cache(cfg, s.disc, false, 1), wave_context(s, lambda), {}};
    r.sol = solve_forward(assemble_forward(r.cache, r.wc), lambda);
    return r;
}

DesignConfig single(double a, double b, double theta = kPi / 4, double x1 = 0.0, double x2 = 0.0) {
    DesignConfig c;
    c.particles = {{a, b, theta, x1, x2}};
    return c;
}

Setup dielectric(double eps) {
    Setup s;
    s.material.model = ParticleMaterial::Model::Constant;
    s.material.constant_permittivity = {eps, 0.0};
    return s;
}

} // namespace

TEST_CASE("near-circular dielectric cylinder matches the Mie series") {
    const Setup s = dielectric(4.0);
    const double R = 10.0;
    for (double lam : {150.0, 300.0, 500.0}) {
        const WaveContext wc = wave_context(s, lam);
        const auto mie = oracle::mie_widths(R, wc.k.km.real(), wc.k.kc.real(), 4.0, 1.0);
        // 1 - b/a = 1e-6 perturbs the widths by a few 1e-6
        const Solved r = solve(single(R, R / (1 + 1e-6), 0.3), s, lam);
        const CrossSections q = cross_sections(r.sol, r.cache, r.wc, s);
        CHECK(std::abs(q.extinction / mie.extinction - 1) < 1e-5);
        CHECK(std::abs(q.scattering / mie.scattering - 1) < 1e-5);
        CHECK(std::abs(q.absorption) < 1e-9 * mie.extinction);
    }
}

TEST_CASE("zero contrast gives no scattering") {
    Setup s = dielectric(1.0);
    DesignConfig cfg;
    cfg.particles = {{10, 4, 0.3, -300, 0}, {12, 3, 1.0, 300, 50}};
    for (double lam : {200.0, 350.0, 500.0}) {
        const Solved r = solve(cfg, s, lam);
        for (double th = 0; th < 2 * kPi; th += 0.5) CHECK(std::abs(far_field(r.sol, r.cache, r.wc, th)) < 1e-9);
        CHECK(std::abs(absorptance(r.sol, r.cache, r.wc, s)) < 1e-9);
    }
}

TEST_CASE("forward solve residual and conditioning are reported") {
    Setup s;
    const Solved r = solve(single(10, 4), s, 350.0);
    CHECK(r.sol.residual < 1e-12);
    CHECK(r.sol.rcond > 0.0);
    CHECK(r.sol.c_phi.size() == 10);
    CHECK(r.sol.c_varphi.size() == 10);
    CHECK_FALSE(r.sol.adjoint);
}

TEST_CASE("basis refinement converges") {
    Setup s10, s20;
    s20.disc.basis = 20;
    for (double b : {4.0, 6.0, 8.0})
        for (double lam : {250.0, 400.0, 520.0}) {
            const Solved r10 = solve(single(10, b), s10, lam), r20 = solve(single(10, b), s20, lam);
            const double q10 = cross_sections(r10.sol, r10.cache, r10.wc, s10).extinction;
            const double q20 = cross_sections(r20.sol, r20.cache, r20.wc, s20).extinction;
            CHECK(std::abs(q10 / q20 - 1) < 1e-6);
        }
}

TEST_CASE("reduced basis agrees with the Nystrom reference off resonance") {
    Setup s;
    for (double b : {4.0, 6.0, 8.0})
        for (double lam : {250.0, 400.0, 520.0}) {
            const DesignConfig cfg = single(10, b);
            const Solved r = solve(cfg, s, lam);
            const NystromSolution n = solve_forward_nystrom(cfg, r.wc, 200);
            const double qr = cross_sections(r.sol, r.cache, r.wc, s).extinction;
            const double qn = cross_sections(exterior_sources(n), r.wc, s).extinction;
            CHECK(std::abs(qr / qn - 1) < 1e-6);
        }
}

TEST_CASE("two-particle solve agrees with the Nystrom reference") {
    Setup s;
    DesignConfig cfg;
    cfg.particles = {{10, 4, 0.7, -20, 5}, {12, 6, 2.0, 25, -10}};
    s.disc.basis = 20;
    for (double lam : {300.0, 450.0}) {
        const Solved r = solve(cfg, s, lam);
        const NystromSolution n = solve_forward_nystrom(cfg, r.wc, 200);
        const double qr = cross_sections(r.sol, r.cache, r.wc, s).extinction;
        const double qn = cross_sections(exterior_sources(n), r.wc, s).extinction;
        CHECK(std::abs(qr / qn - 1) < 1e-6);
    }
}

TEST_CASE("lossy particle absorbs at every wavelength") {
    Setup s;
    DesignConfig cfg;
    cfg.particles = {{10, 2, 0.4, 0, 0}, {14, 9, 1.3, 60, 20}};
    const Spectrum sp = compute_spectrum(cfg, s, make_grid(150, 550, 41));
    for (const auto& v : sp.values) {
        CHECK(v.Qa >= -1e-8 * v.Qe);
        CHECK(v.Qe > 0.0);
        CHECK(v.Qs > 0.0);
    }
}

TEST_CASE("single particle spectra ignore translation and half turns") {
    Setup s;
    const WavelengthGrid g = make_grid(150, 550, 9);
    const auto base = compute_spectrum(single(10, 4, 0.5), s, g).values;
    const auto moved = compute_spectrum(single(10, 4, 0.5, 37, -81), s, g).values;
    const auto turned = compute_spectrum(single(10, 4, 0.5 + kPi), s, g).values;
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(std::abs(moved[i].A - base[i].A) < 1e-10 * std::max(1.0, std::abs(base[i].A)));
        CHECK(std::abs(moved[i].Qe / base[i].Qe - 1) < 1e-9);
        CHECK(std::abs(turned[i].A - base[i].A) < 1e-10);
        CHECK(std::abs(turned[i].Qe / base[i].Qe - 1) < 1e-9);
    }
}

TEST_CASE("density reconstruction is periodic") {
    Setup s;
    const Solved r = solve(single(10, 5), s, 330.0);
    const DensityValues a = reconstruct_density(r.sol, r.cache, 0, 0.2);
    const DensityValues b = reconstruct_density(r.sol, r.cache, 0, 0.2 + 2 * kPi);
    CHECK(std::abs(a.phi - b.phi) < 1e-12 * std::abs(a.phi));
    CHECK(std::abs(a.varphi - b.varphi) < 1e-12 * std::abs(a.varphi));
}

TEST_CASE("invalid inputs are rejected") {
    Setup s;
    s.disc.basis = 7;
    CHECK_THROWS_AS(build_cache(single(10, 4), s.disc, false, 1), Error);
    CHECK_THROWS_AS(build_cache(single(10, 10), Setup{}.disc, false, 1), Error);
    DesignConfig empty;
    CHECK_THROWS_AS(build_cache(empty, Setup{}.disc, false, 1), Error);
}
