/*
 * src/nystrom.cpp
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

#include "plasmo/nystrom.hpp"

#include <cmath>

#include "plasmo/kernels.hpp"

namespace plasmo {

NystromGrid make_nystrom_grid(int n) {
    if (n < 8 || n % 2) fail_argument("Nystrom node count must be even and at least 8");
    NystromGrid g;
    g.n = n;
    g.nodes.resize(n);
    g.weights.assign(n, 2.0 * kPi / n);
    for (int i = 0; i < n; ++i) g.nodes[i] = 2.0 * kPi * i / n;
    g.log_weights = log_quadrature_weights(n);
    return g;
}

namespace {

// Kernel weight matrices without the source speed factor.
// sl(i, j): single layer, kx(i, j): normal derivative at the target x_i,
// ky(i, j): normal derivative at the source x_j (the double-layer kernel seen from x_i).
struct Blocks {
    Eigen::MatrixXcd sl, kx, ky;
};

Blocks self_block(const std::vector<BoundarySample>& xs, const NystromGrid& g, cplx k) {
    const int n = g.n;
    const double h = 2.0 * kPi / n;
    Blocks b{Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n)};
    const cplx g0 = ghat_zero(k);
    for (int i = 0; i < n; ++i) {
        const BoundarySample& x = xs[i];
        for (int j = 0; j < n; ++j) {
            const double R = g.log_weights[(j - i + n) % n];
            if (i == j) {
                const double lap = -dot(x.accel, x.normal) / (4.0 * kPi * x.speed * x.speed);
                b.sl(i, j) = R / (4.0 * kPi) + h * (std::log(x.speed) / (2.0 * kPi) + g0);
                b.kx(i, j) = h * lap;
                b.ky(i, j) = h * lap;
                continue;
            }
            const BoundarySample& y = xs[j];
            const Vec2 z = x.x - y.x;
            const double r = norm(z);
            const double ls = std::log(4.0 * std::pow(std::sin(0.5 * (x.t - y.t)), 2));
            const Radial gr = helmholtz_radial(r, k);
            const auto [j0, j1] = bessel_j0_j1(k * r);
            const cplx a1 = j0 / (4.0 * kPi);
            b.sl(i, j) = R * a1 + h * (gr.v - a1 * ls);
            const double zx = dot(z, x.normal), zy = -dot(z, y.normal);
            const cplx phi1 = gr.d1 / r;
            const cplx l1 = -(k / (4.0 * kPi)) * (j1 / r);
            b.kx(i, j) = R * l1 * zx + h * (phi1 - l1 * ls) * zx;
            b.ky(i, j) = R * l1 * zy + h * (phi1 - l1 * ls) * zy;
        }
    }
    return b;
}

Blocks cross_block(const std::vector<BoundarySample>& xs, const std::vector<BoundarySample>& ys, cplx k) {
    const int n = static_cast<int>(xs.size());
    const double h = 2.0 * kPi / n;
    Blocks b{Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Vec2 z = xs[i].x - ys[j].x;
            const double r = norm(z);
            const Radial gr = helmholtz_radial(r, k);
            b.sl(i, j) = h * gr.v;
            b.kx(i, j) = h * gr.d1 / r * dot(z, xs[i].normal);
            b.ky(i, j) = -h * gr.d1 / r * dot(z, ys[j].normal);
        }
    return b;
}

struct Assembly {
    std::vector<BoundarySample> samples;
    Eigen::MatrixXcd A;
};

Assembly assemble(const DesignConfig& cfg, const WaveContext& wc, int n, bool adjoint) {
    validate(cfg, false);
    const NystromGrid g = make_nystrom_grid(n);
    const int M = static_cast<int>(cfg.particles.size()), Mn = M * n;
    Assembly as;
    std::vector<std::vector<BoundarySample>> xs(M);
    for (int m = 0; m < M; ++m) {
        xs[m] = sample_uniform(cfg.particles[m], n);
        as.samples.insert(as.samples.end(), xs[m].begin(), xs[m].end());
    }
    const cplx ec = wc.k.eps_c;
    const double em = wc.k.eps_m;
    as.A = Eigen::MatrixXcd::Zero(2 * Mn, 2 * Mn);
    const cplx ks[2] = {wc.k.kc, wc.k.km};
    for (int a = 0; a < M; ++a) {
        for (int b = 0; b < M; ++b) {
            for (int kk = 0; kk < 2; ++kk) {
                const Blocks B = (a == b) ? self_block(xs[a], g, ks[kk]) : cross_block(xs[a], xs[b], ks[kk]);
                const bool inner = (kk == 0);
                if (!adjoint) {
                    Eigen::MatrixXcd S = B.sl, K = B.kx;
                    for (int j = 0; j < n; ++j) {
                        S.col(j) *= xs[b][j].speed;
                        K.col(j) *= xs[b][j].speed;
                    }
                    const int col = inner ? b * n : Mn + b * n;
                    if (inner) {
                        as.A.block(a * n, col, n, n) = S;
                        as.A.block(Mn + a * n, col, n, n) = K / ec;
                    } else {
                        as.A.block(a * n, col, n, n) = -S;
                        as.A.block(Mn + a * n, col, n, n) = -K / em;
                    }
                } else {
                    Eigen::MatrixXcd S = B.sl.conjugate(), K = B.ky.conjugate();
                    for (int i = 0; i < n; ++i) {
                        S.row(i) *= xs[a][i].speed;
                        K.row(i) *= xs[a][i].speed;
                    }
                    if (inner) {
                        as.A.block(a * n, b * n, n, n) = S;
                        as.A.block(a * n, Mn + b * n, n, n) = K / std::conj(ec);
                    } else {
                        as.A.block(Mn + a * n, b * n, n, n) = -S;
                        as.A.block(Mn + a * n, Mn + b * n, n, n) = -K / em;
                    }
                }
            }
        }
    }
    // jump terms
    for (int i = 0; i < Mn; ++i) {
        if (!adjoint) {
            as.A(Mn + i, i) += -0.5 / ec;
            as.A(Mn + i, Mn + i) += -0.5 / em;
        } else {
            as.A(i, Mn + i) += -0.5 / std::conj(ec);
            as.A(Mn + i, Mn + i) += -0.5 / em;
        }
    }
    return as;
}

NystromSolution finish(Assembly& as, const Eigen::VectorXcd& rhs, int M, int n, double lambda) {
    NystromSolution sol;
    sol.M = M;
    sol.n = n;
    const Eigen::VectorXcd x = dense_solve(as.A, rhs, lambda, sol.residual, sol.rcond);
    sol.first = x.head(M * n);
    sol.second = x.tail(M * n);
    sol.samples = std::move(as.samples);
    return sol;
}

} // namespace

NystromSolution solve_forward_nystrom(const DesignConfig& cfg, const WaveContext& wc, int n) {
    Assembly as = assemble(cfg, wc, n, false);
    const int Mn = static_cast<int>(as.samples.size());
    Eigen::VectorXcd f(2 * Mn);
    const cplx ik = cplx(0.0, 1.0) * wc.k.km;
    for (int i = 0; i < Mn; ++i) {
        const cplx ui = incident_field(wc, as.samples[i].x);
        f(i) = ui;
        f(Mn + i) = ik * dot(wc.d, as.samples[i].normal) * ui / wc.k.eps_m;
    }
    return finish(as, f, static_cast<int>(cfg.particles.size()), n, wc.lambda);
}

NystromSolution solve_adjoint_nystrom(const DesignConfig& cfg, const WaveContext& wc, const Eigen::VectorXcd& g2,
                                      int n) {
    Assembly as = assemble(cfg, wc, n, true);
    const int Mn = static_cast<int>(as.samples.size());
    if (g2.size() != Mn) fail_argument("adjoint data has the wrong length");
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(2 * Mn);
    g.tail(Mn) = g2;
    return finish(as, g, static_cast<int>(cfg.particles.size()), n, wc.lambda);
}

SourceSamples exterior_sources(const NystromSolution& sol) {
    SourceSamples src;
    const double h = 2.0 * kPi / sol.n;
    for (std::size_t i = 0; i < sol.samples.size(); ++i) {
        src.x.push_back(sol.samples[i].x);
        src.w.push_back(h * sol.samples[i].speed * sol.second(static_cast<int>(i)));
    }
    return src;
}

Eigen::VectorXcd nystrom_adjoint_rhs(const NystromSolution& fwd, const WaveContext& wc, const Setup& s) {
    return adjoint_rhs(exterior_sources(fwd), fwd.samples, wc, s);
}

cplx trig_interpolate(const Eigen::VectorXcd& v, int offset, int n, double t) {
    // Dirichlet kernel of the even-n trigonometric interpolant.
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double d = t - 2.0 * kPi * j / n;
        const double s = std::sin(0.5 * d);
        double w;
        if (std::abs(s) < 1e-14) w = 1.0;
        else w = std::sin(0.5 * n * d) * std::cos(0.5 * d) / (n * s);
        acc += w * v(offset + j);
    }
    return acc;
}

SolverComparison compare_solvers(const DesignConfig& cfg, const Setup& s, double lambda, int n) {
    const DesignCache c = build_cache(cfg, s.disc, false, 1);
    const WaveContext wc = wave_context(s, lambda);
    const DensitySolution fwd = solve_forward(assemble_forward(c, wc), lambda);
    AdjointSystem as = assemble_adjoint(c, wc);
    as.g.tail(as.g.size() / 2) = adjoint_rhs(fwd, c, wc, s);
    const DensitySolution adj = solve_adjoint(as, lambda);
    const NystromSolution nf = solve_forward_nystrom(cfg, wc, n);
    const NystromSolution na = solve_adjoint_nystrom(cfg, wc, nystrom_adjoint_rhs(nf, wc, s), n);
    SolverComparison out;
    out.lambda = lambda;
    out.qe_rbm = cross_sections(fwd, c, wc, s).extinction;
    out.qe_nystrom = cross_sections(exterior_sources(nf), wc, s).extinction;
    out.qe_rel = std::abs(out.qe_rbm - out.qe_nystrom) / std::abs(out.qe_nystrom);
    double ep = 0.0, eq = 0.0, np = 0.0, nq = 0.0;
    for (int m = 0; m < nf.M; ++m)
        for (int i = 0; i < n; ++i) {
            const int j = m * n + i;
            const AdjointValues v = reconstruct_adjoint(adj, c, m, 2.0 * kPi * i / n);
            ep += std::norm(v.p - na.first(j));
            eq += std::norm(v.q - na.second(j));
            np += std::norm(na.first(j));
            nq += std::norm(na.second(j));
        }
    out.p_rel = std::sqrt(ep / np);
    out.q_rel = std::sqrt(eq / nq);
    return out;
}

} // namespace plasmo
