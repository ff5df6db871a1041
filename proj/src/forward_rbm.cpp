/*
 * src/forward_rbm.cpp
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

#include "plasmo/forward_rbm.hpp"

#include <cmath>
#include <sstream>

#include "plasmo/adjoint_rbm.hpp"
#include "plasmo/kernels.hpp"

namespace plasmo {

namespace {

struct PairWeights {
    Eigen::MatrixXcd sl, dl, sla, dla; // N x Nq quadrature weights times kernel
};

// Kernel weights from the collocation nodes of particle n to the quadrature nodes of particle m.
void pair_weights(const DesignCache& c, int n, int m, cplx k, bool want_fwd, bool want_adj, PairWeights& out) {
    const auto& pn = c.particles[n];
    const auto& pm = c.particles[m];
    const int N = c.N, Nq = c.Nq;
    const double h = 2.0 * kPi / Nq;
    if (want_fwd) {
        out.sl.resize(N, Nq);
        out.dl.resize(N, Nq);
    }
    if (want_adj) {
        out.sla.resize(N, Nq);
        out.dla.resize(N, Nq);
    }
    const bool self = (n == m);
    for (int j = 0; j < N; ++j) {
        const int p = j * c.stride;
        const BoundarySample& x = pn.nodes[p];
        for (int q = 0; q < Nq; ++q) {
            const BoundarySample& y = pm.nodes[q];
            const Vec2 z = x.x - y.x;
            cplx wsl, wdl, wdla;
            if (self) {
                if (p == q) {
                    wsl = h * ghat_zero(k);
                    wdl = 0.0;
                    wdla = 0.0;
                } else {
                    const double r = norm(z);
                    const SelfPoint sp = self_point(r, x.t - y.t, k);
                    const SplitKernel s = split_single(sp);
                    const SplitKernel d = split_normal(sp, dot(z, x.normal), k);
                    const SplitKernel da = split_normal(sp, -dot(z, y.normal), k);
                    if (c.disc.log_corrected) {
                        const double R = c.logw[(q - p + Nq) % Nq];
                        wsl = h * s.smooth + R * s.log_part;
                        wdl = h * d.smooth + R * d.log_part;
                        wdla = h * da.smooth + R * da.log_part;
                    } else {
                        wsl = h * sp.ghat.v;
                        wdl = h * (d.smooth + d.log_part * sp.log_sin);
                        wdla = h * (da.smooth + da.log_part * sp.log_sin);
                    }
                }
            } else {
                const double r = norm(z);
                const Radial g = helmholtz_radial(r, k);
                wsl = h * g.v;
                const cplx phi1 = g.d1 / r;
                wdl = h * phi1 * dot(z, x.normal);
                wdla = -h * phi1 * dot(z, y.normal);
            }
            if (want_fwd) {
                out.sl(j, q) = wsl;
                out.dl(j, q) = wdl;
            }
            if (want_adj) {
                out.sla(j, q) = std::conj(wsl) * x.speed;
                out.dla(j, q) = std::conj(wdla) * x.speed;
            }
        }
    }
}

} // namespace

void assemble_systems(const DesignCache& c, const WaveContext& wc, ForwardSystem* fwd, AdjointSystem* adj) {
    const int M = c.M(), N = c.N, MN = M * N;
    const cplx ec = wc.k.eps_c;
    const double em = wc.k.eps_m;
    const cplx ks[2] = {wc.k.kc, wc.k.km};
    if (fwd) {
        fwd->M = M;
        fwd->N = N;
        fwd->M1 = Eigen::MatrixXcd::Zero(2 * MN, 2 * MN);
        fwd->M2 = Eigen::MatrixXcd::Zero(2 * MN, 2 * MN);
        fwd->f.resize(2 * MN);
        fwd->collocation_nodes.resize(N);
        for (int j = 0; j < N; ++j) fwd->collocation_nodes[j] = 2.0 * kPi * j / N;
    }
    if (adj) {
        adj->M = M;
        adj->N = N;
        adj->T1 = Eigen::MatrixXcd::Zero(2 * MN, 2 * MN);
        adj->T2 = Eigen::MatrixXcd::Zero(2 * MN, 2 * MN);
        adj->g = Eigen::VectorXcd::Zero(2 * MN);
    }
    PairWeights W;
    for (int n = 0; n < M; ++n) {
        const int rn = n * N;
        for (int m = 0; m < M; ++m) {
            const int cm = m * N;
            const auto& pm = c.particles[m];
            for (int kk = 0; kk < 2; ++kk) {
                pair_weights(c, n, m, ks[kk], fwd != nullptr, adj != nullptr, W);
                const bool inner = (kk == 0);
                const int col = inner ? cm : MN + cm;
                if (fwd) {
                    const Eigen::MatrixXcd S = W.sl * pm.trig;
                    const Eigen::MatrixXcd D = W.dl * pm.trig;
                    if (inner) {
                        fwd->M2.block(rn, col, N, N) = S;
                        fwd->M2.block(MN + rn, col, N, N) = D / ec;
                    } else {
                        fwd->M2.block(rn, col, N, N) = -S;
                        fwd->M2.block(MN + rn, col, N, N) = -D / em;
                    }
                }
                if (adj) {
                    const Eigen::MatrixXcd Sa = W.sla * pm.trig;
                    const Eigen::MatrixXcd Ka = W.dla * pm.qbasis;
                    if (inner) {
                        adj->T2.block(rn, cm, N, N) = Sa;
                        adj->T2.block(rn, MN + cm, N, N) = Ka / std::conj(ec);
                    } else {
                        adj->T2.block(MN + rn, cm, N, N) = -Sa;
                        adj->T2.block(MN + rn, MN + cm, N, N) = -Ka / em;
                    }
                }
            }
        }
        const auto& pn = c.particles[n];
        if (fwd) {
            fwd->M1.block(rn, rn, N, N) = pn.S.cast<cplx>();
            fwd->M1.block(rn, MN + rn, N, N) = -pn.S.cast<cplx>();
            fwd->M1.block(MN + rn, rn, N, N) = (-0.5 * pn.psi + pn.K).cast<cplx>() / ec;
            fwd->M1.block(MN + rn, MN + rn, N, N) = -(0.5 * pn.psi + pn.K).cast<cplx>() / em;
            const cplx ik(0.0, wc.k.km.real());
            for (int j = 0; j < N; ++j) {
                const BoundarySample& x = pn.nodes[j * c.stride];
                const cplx ui = incident_field(wc, x.x);
                fwd->f(rn + j) = ui;
                fwd->f(MN + rn + j) = ik * dot(wc.d, x.normal) * ui / em;
            }
        }
        if (adj) {
            adj->T1.block(rn, rn, N, N) = pn.Sa.cast<cplx>();
            adj->T1.block(rn, MN + rn, N, N) = (-0.5 * pn.qc + pn.Ka).cast<cplx>() / std::conj(ec);
            adj->T1.block(MN + rn, rn, N, N) = -pn.Sa.cast<cplx>();
            adj->T1.block(MN + rn, MN + rn, N, N) = -(0.5 * pn.qc + pn.Ka).cast<cplx>() / em;
        }
    }
}

ForwardSystem assemble_forward(const DesignCache& cache, const WaveContext& wc) {
    ForwardSystem s;
    assemble_systems(cache, wc, &s, nullptr);
    return s;
}

Eigen::VectorXcd dense_solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double lambda, double& residual,
                             double& rcond) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    rcond = lu.rcond();
    if (!(rcond > 0.0) || !std::isfinite(rcond)) {
        std::ostringstream os;
        os << "singular system at lambda = " << lambda << " nm (rcond estimate " << rcond << ")";
        fail_numerical(os.str());
    }
    Eigen::VectorXcd x = lu.solve(b);
    const double bn = b.lpNorm<Eigen::Infinity>();
    residual = bn > 0.0 ? (A * x - b).lpNorm<Eigen::Infinity>() / bn : (A * x).lpNorm<Eigen::Infinity>();
    if (!x.allFinite()) {
        std::ostringstream os;
        os << "non-finite solution at lambda = " << lambda << " nm";
        fail_numerical(os.str());
    }
    return x;
}

DensitySolution solve_forward(const ForwardSystem& sys, double lambda) {
    DensitySolution sol;
    sol.M = sys.M;
    sol.N = sys.N;
    const Eigen::VectorXcd x = dense_solve(sys.M1 + sys.M2, sys.f, lambda, sol.residual, sol.rcond);
    const int MN = sys.M * sys.N;
    sol.c_phi = x.head(MN);
    sol.c_varphi = x.tail(MN);
    return sol;
}

DensityValues reconstruct_density(const DensitySolution& sol, const DesignCache& cache, int particle, double t) {
    if (particle < 0 || particle >= sol.M) fail_argument("particle index out of range");
    const auto& B = cache.particles[particle].basis;
    DensityValues v{0.0, 0.0};
    for (int i = 0; i < sol.N; ++i) {
        const double psi = B.eval_forward(i, t);
        v.phi += sol.c_phi(particle * sol.N + i) * psi;
        v.varphi += sol.c_varphi(particle * sol.N + i) * psi;
    }
    return v;
}

} // namespace plasmo
