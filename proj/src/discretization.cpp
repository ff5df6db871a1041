/*
 * src/discretization.cpp
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

#include "plasmo/discretization.hpp"

#include <cmath>
#include <memory>

#include "plasmo/parallel.hpp"

namespace plasmo {

void validate(const Setup& s) {
    if (s.material.model == ParticleMaterial::Model::Drude) validate(s.material.drude);
    validate(s.medium);
    if (!(s.arc.radius > 0.0)) fail_argument("arc radius must be positive");
    if (!(s.arc.delta_theta > 0.0) || s.arc.delta_theta > kPi) fail_argument("arc half-width must lie in (0, pi]");
    const double L = 2.0 * s.arc.radius * std::sin(s.arc.delta_theta) * std::cos(s.arc.theta_bar - s.incident_angle);
    if (std::abs(L) < 1e-12 * s.arc.radius) fail_argument("measurement arc has zero incident flux");
    const auto& d = s.disc;
    if (d.basis < 4 || d.basis % 2) fail_argument("basis size must be even and at least 4");
    if (d.quadrature != 0 && (d.quadrature < d.basis || d.quadrature % d.basis))
        fail_argument("quadrature nodes must be a multiple of the basis size");
    if (d.arc_nodes < 3 || d.arc_nodes % 2 == 0) fail_argument("arc nodes must be odd and at least 3");
    if (d.circle_nodes < 8) fail_argument("circle nodes must be at least 8");
}

int quadrature_nodes(const Discretization& d) {
    if (d.quadrature > 0) return d.quadrature;
    const int want = std::max(64, 4 * d.basis);
    return d.basis * ((want + d.basis - 1) / d.basis);
}

std::vector<double> log_quadrature_weights(int nodes) {
    if (nodes % 2) fail_argument("log quadrature needs an even node count");
    const int n = nodes / 2;
    std::vector<double> R(nodes);
    for (int d = 0; d < nodes; ++d) {
        const double x = kPi * d / n;
        double acc = 0.0;
        for (int m = 1; m < n; ++m) acc += std::cos(m * x) / m;
        R[d] = -(2.0 * kPi / n) * acc - (kPi / (double(n) * n)) * ((d % 2) ? -1.0 : 1.0);
    }
    return R;
}

static ParticleCache make_particle(const EllipseParams& w, const Discretization& disc, int N, int Nq,
                                   bool with_derivatives) {
    ParticleCache pc{w, SpectralBasis(w, N, disc.series_terms, disc.kappa_nodes), {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
    pc.nodes = sample_uniform(w, Nq);
    pc.jac.resize(Nq);
    pc.trig.resize(Nq, N);
    pc.qbasis.resize(Nq, N);
    for (int q = 0; q < Nq; ++q) {
        const double s = pc.nodes[q].t;
        pc.jac[q] = shape_jacobians(w, s);
        for (int i = 0; i < N; ++i) {
            pc.trig(q, i) = pc.basis.trig(i, s);
            pc.qbasis(q, i) = pc.trig(q, i) * pc.nodes[q].speed;
        }
    }
    pc.S.resize(N, N);
    pc.K.resize(N, N);
    pc.psi.resize(N, N);
    pc.Sa.resize(N, N);
    pc.Ka.resize(N, N);
    pc.qc.resize(N, N);
    for (int j = 0; j < N; ++j) {
        const double t = 2.0 * kPi * j / N;
        for (int i = 0; i < N; ++i) {
            const SingularPair f = pc.basis.singular_forward(i, t);
            const SingularPair a = pc.basis.singular_adjoint(i, t);
            pc.S(j, i) = f.s;
            pc.K(j, i) = f.k;
            pc.psi(j, i) = pc.basis.eval_forward(i, t);
            pc.Sa(j, i) = a.s;
            pc.Ka(j, i) = a.k;
            pc.qc(j, i) = pc.basis.eval_adjoint_q(i, t);
        }
    }
    if (with_derivatives) {
        for (int s = 0; s < 2; ++s) {
            pc.dS[s].resize(Nq, N);
            pc.dK[s].resize(Nq, N);
        }
        for (int q = 0; q < Nq; ++q) {
            for (int i = 0; i < N; ++i) {
                const DerivativePair D = pc.basis.derivative_actions(i, pc.nodes[q].t);
                for (int s = 0; s < 2; ++s) {
                    pc.dS[s](q, i) = D.ds[s];
                    pc.dK[s](q, i) = D.dk[s];
                }
            }
        }
    }
    return pc;
}

DesignCache build_cache(const DesignConfig& cfg, const Discretization& disc, bool with_derivatives, int threads) {
    validate(cfg, false);
    DesignCache c;
    c.disc = disc;
    c.N = disc.basis;
    c.Nq = quadrature_nodes(disc);
    c.stride = c.Nq / c.N;
    c.with_derivatives = with_derivatives;
    c.logw = log_quadrature_weights(c.Nq);
    const int M = static_cast<int>(cfg.particles.size());
    std::vector<std::unique_ptr<ParticleCache>> tmp(M);
    parallel_for(M, threads, [&](int m) {
        tmp[m] = std::make_unique<ParticleCache>(make_particle(cfg.particles[m], disc, c.N, c.Nq, with_derivatives));
    });
    c.particles.reserve(M);
    for (auto& p : tmp) c.particles.push_back(std::move(*p));
    return c;
}

WaveContext wave_context(const Setup& s, double lambda) {
    return {lambda, wavenumbers(lambda, s.medium, s.material), {std::cos(s.incident_angle), std::sin(s.incident_angle)}};
}

cplx incident_field(const WaveContext& wc, Vec2 x) {
    return std::exp(cplx(0.0, 1.0) * wc.k.km * dot(wc.d, x));
}

} // namespace plasmo
