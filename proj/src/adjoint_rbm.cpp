/*
 * src/adjoint_rbm.cpp
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

#include "plasmo/adjoint_rbm.hpp"

#include <cmath>

#include "plasmo/observables.hpp"

namespace plasmo {

Eigen::VectorXcd adjoint_rhs(const SourceSamples& src, const std::vector<BoundarySample>& targets,
                             const WaveContext& wc, const Setup& s) {
    const ArcQuadrature aq = arc_quadrature(s);
    const double k = wc.k.km.real();
    const std::vector<cplx> h = far_field_h(src, wc.k.km, aq.theta);
    const cplx ik = cplx(0.0, 1.0) * wc.k.km;
    const Vec2 d0{std::cos(s.incident_angle), std::sin(s.incident_angle)};
    std::vector<Vec2> xh(aq.theta.size());
    for (std::size_t a = 0; a < xh.size(); ++a) xh[a] = {std::cos(aq.theta[a]), std::sin(aq.theta[a])};
    Eigen::VectorXcd g2(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j) {
        const BoundarySample& x = targets[j];
        cplx acc = 0.0;
        for (std::size_t a = 0; a < xh.size(); ++a) acc += aq.weight[a] * h[a] * std::exp(ik * dot(xh[a], x.x));
        cplx val = acc * x.speed / (4.0 * k * kPi);
        if (aq.contains_incident) val += cplx(0.0, 1.0 / k) * std::exp(ik * dot(d0, x.x)) * x.speed;
        g2(j) = -val / aq.L;
    }
    return g2;
}

Eigen::VectorXcd adjoint_rhs(const DensitySolution& fwd, const DesignCache& c, const WaveContext& wc,
                             const Setup& s) {
    std::vector<BoundarySample> targets;
    targets.reserve(c.M() * c.N);
    for (const auto& p : c.particles)
        for (int j = 0; j < c.N; ++j) targets.push_back(p.nodes[j * c.stride]);
    return adjoint_rhs(exterior_sources(fwd, c), targets, wc, s);
}

AdjointSystem assemble_adjoint(const DesignCache& cache, const WaveContext& wc) {
    AdjointSystem s;
    assemble_systems(cache, wc, nullptr, &s);
    return s;
}

DensitySolution solve_adjoint(const AdjointSystem& sys, double lambda) {
    DensitySolution sol;
    sol.M = sys.M;
    sol.N = sys.N;
    sol.adjoint = true;
    const Eigen::VectorXcd x = dense_solve(sys.T1 + sys.T2, sys.g, lambda, sol.residual, sol.rcond);
    const int MN = sys.M * sys.N;
    sol.c_phi = x.head(MN);
    sol.c_varphi = x.tail(MN);
    return sol;
}

AdjointValues reconstruct_adjoint(const DensitySolution& sol, const DesignCache& cache, int particle, double t) {
    if (particle < 0 || particle >= sol.M) fail_argument("particle index out of range");
    const auto& B = cache.particles[particle].basis;
    AdjointValues v{0.0, 0.0};
    for (int i = 0; i < sol.N; ++i) {
        v.p += sol.c_phi(particle * sol.N + i) * B.trig(i, t);
        v.q += sol.c_varphi(particle * sol.N + i) * B.eval_adjoint_q(i, t);
    }
    return v;
}

} // namespace plasmo
