/*
 * src/gradient.cpp
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

#include "plasmo/gradient.hpp"

#include <cmath>
#include <sstream>

#include "plasmo/kernels.hpp"
#include "plasmo/parallel.hpp"

namespace plasmo {

namespace {

using C2 = std::array<cplx, 2>;

inline cplx dotc(const Vec2& a, const C2& b) { return a.x * b[0] + a.y * b[1]; }

// Per-particle data sampled on the quadrature nodes.
struct NodeData {
    std::vector<cplx> Pc, Qc;   // h conj(p), h conj(q)
    std::vector<cplx> sS[2];    // source weights for the single layer, per wavenumber (k_c, k_m)
    std::vector<cplx> sD[2];    // source weights for the normal derivative
};

// Accumulators for one particle, split by E and F contributions.
struct Acc {
    // target side
    std::vector<C2> tz[2];
    std::vector<cplx> tn;  // F only
    std::vector<C2> tzn;   // F only
    // source side
    std::vector<C2> sz[2];
    std::vector<C2> sn;    // F only
    std::vector<cplx> ss[2];
    void resize(int n) {
        for (int e = 0; e < 2; ++e) {
            tz[e].assign(n, {0.0, 0.0});
            sz[e].assign(n, {0.0, 0.0});
            ss[e].assign(n, 0.0);
        }
        tn.assign(n, 0.0);
        tzn.assign(n, {0.0, 0.0});
        sn.assign(n, {0.0, 0.0});
    }
};

struct Radials {
    cplx e0, e1, d0, d1; // single layer value/derivative, phi1 and its derivative
};

// Adds one (target p, source q) interaction given the radial coefficients.
inline void interact(const Radials& R, const Vec2& z, double r, const BoundarySample& x, const NodeData& tgt, int p,
                     const NodeData& src, int q, int kk, Acc& at, Acc& as) {
    const Vec2 zh = (1.0 / r) * z;
    const double zn = dot(z, x.normal);
    const cplx czE = tgt.Pc[p] * R.e1 * src.sS[kk][q];
    const cplx czF = tgt.Qc[p] * R.d1 * zn * src.sD[kk][q];
    const cplx cn = tgt.Qc[p] * R.d0 * src.sD[kk][q];
    const cplx csE = tgt.Pc[p] * R.e0 * src.sS[kk][q];
    const cplx csF = tgt.Qc[p] * R.d0 * zn * src.sD[kk][q];
    at.tz[0][p][0] += czE * zh.x;
    at.tz[0][p][1] += czE * zh.y;
    at.tz[1][p][0] += czF * zh.x;
    at.tz[1][p][1] += czF * zh.y;
    at.tn[p] += cn;
    at.tzn[p][0] += cn * z.x;
    at.tzn[p][1] += cn * z.y;
    as.sz[0][q][0] += czE * zh.x;
    as.sz[0][q][1] += czE * zh.y;
    as.sz[1][q][0] += czF * zh.x;
    as.sz[1][q][1] += czF * zh.y;
    as.sn[q][0] += cn * x.normal.x;
    as.sn[q][1] += cn * x.normal.y;
    as.ss[0][q] += csE;
    as.ss[1][q] += csF;
}

inline Radials full_radials(double r, cplx k) {
    const Radial g = helmholtz_radial(r, k);
    const cplx phi1 = g.d1 / r;
    return {g.v, g.d1, phi1, (g.d2 - phi1) / r};
}

void pair_terms(const DesignCache& c, int n, int m, const WaveContext& wc, const std::vector<NodeData>& nd,
                std::vector<Acc>& acc) {
    const auto& pn = c.particles[n];
    const auto& pm = c.particles[m];
    const int Nq = c.Nq;
    const cplx ks[2] = {wc.k.kc, wc.k.km};
    const double h = 2.0 * kPi / Nq;
    for (int kk = 0; kk < 2; ++kk) {
        const cplx k = ks[kk];
        for (int p = 0; p < Nq; ++p) {
            const BoundarySample& x = pn.nodes[p];
            if (n == m) {
                // only the speed derivative of the single layer survives on the diagonal
                acc[n].ss[0][p] += nd[n].Pc[p] * ghat_zero(k) * nd[n].sS[kk][p];
            }
            for (int q = (n == m ? p + 1 : 0); q < Nq; ++q) {
                const BoundarySample& y = pm.nodes[q];
                const Vec2 z = x.x - y.x;
                const double r = norm(z);
                Radials R;
                if (n != m) {
                    R = full_radials(r, k);
                } else {
                    // the split is symmetric in (p, q), so one evaluation serves both orders
                    const SelfPoint sp = self_point(r, x.t - y.t, k);
                    const double lam = c.disc.log_corrected ? sp.log_sin - c.logw[(q - p + Nq) % Nq] / h : 0.0;
                    const cplx phi1 = sp.ghat.d1 / r;
                    const cplx beta = sp.j1_over_r;
                    const cplx dbeta = (k * (sp.j0m1 + 1.0) - 2.0 * beta) / r;
                    const cplx kp = k / (4.0 * kPi);
                    R.e0 = sp.ghat.v - sp.j0m1 / (4.0 * kPi) * lam;
                    R.e1 = sp.ghat.d1 + kp * r * beta * lam;
                    R.d0 = phi1 + kp * beta * lam;
                    R.d1 = (sp.ghat.d2 - phi1) / r + kp * dbeta * lam;
                }
                interact(R, z, r, x, nd[n], p, nd[m], q, kk, acc[n], acc[m]);
                interact(R, -1.0 * z, r, y, nd[m], q, nd[n], p, kk, acc[m], acc[n]);
            }
        }
    }
}

void check_wave(const DesignCache& c) {
    if (!c.with_derivatives) fail_argument("gradient needs a cache built with operator derivatives");
}

} // namespace

std::vector<double> dA_dw(const DensitySolution& fwd, const DesignCache& c, const WaveContext& wc,
                          const Setup& s) {
    const ArcQuadrature aq = arc_quadrature(s);
    const double k = wc.k.km.real();
    const cplx ik(0.0, k);
    std::vector<double> th = aq.theta;
    th.push_back(s.incident_angle);
    const std::vector<cplx> h = far_field_h(fwd, c, wc, th);
    const int nt = static_cast<int>(th.size());
    // weights of h_w(theta) in the linearised A
    std::vector<cplx> wt(nt);
    for (int a = 0; a + 1 < nt; ++a) wt[a] = aq.weight[a] * std::conj(h[a]) / (4.0 * k * kPi);
    wt[nt - 1] = aq.contains_incident ? cplx(0.0, -1.0 / k) : cplx(0.0);
    const double hq = 2.0 * kPi / c.Nq;
    std::vector<double> out(kSlots * c.M(), 0.0);
    for (int m = 0; m < c.M(); ++m) {
        const auto& pm = c.particles[m];
        const Eigen::VectorXcd dens = pm.trig * fwd.c_varphi.segment(m * c.N, c.N);
        std::array<cplx, kSlots> acc{};
        for (int q = 0; q < c.Nq; ++q) {
            const BoundarySample& y = pm.nodes[q];
            const ShapeJacobians& J = pm.jac[q];
            C2 vx{0.0, 0.0};
            cplx v0 = 0.0;
            for (int a = 0; a < nt; ++a) {
                if (wt[a] == 0.0) continue;
                const Vec2 xh{std::cos(th[a]), std::sin(th[a])};
                const cplx e = wt[a] * std::exp(-ik * dot(xh, y.x));
                v0 += e;
                vx[0] += -ik * xh.x * e;
                vx[1] += -ik * xh.y * e;
            }
            const cplx sv = hq * dens(q);
            for (int i = 0; i < kSlots; ++i) acc[i] += sv * (dotc(J.dx[i], vx) + J.dspeed[i] / y.speed * v0);
        }
        for (int i = 0; i < kSlots; ++i) out[m * kSlots + i] = -acc[i].real() / aq.L;
    }
    return out;
}

OperatorTerms operator_derivative_terms(const DensitySolution& fwd, const DensitySolution& adj,
                                        const DesignCache& c, const WaveContext& wc) {
    check_wave(c);
    const int M = c.M(), N = c.N, Nq = c.Nq;
    const double h = 2.0 * kPi / Nq;
    const cplx ec = wc.k.eps_c;
    const double em = wc.k.eps_m;
    std::vector<NodeData> nd(M);
    std::vector<Eigen::VectorXcd> cin(M), cout(M);
    for (int m = 0; m < M; ++m) {
        const auto& pm = c.particles[m];
        cin[m] = fwd.c_phi.segment(m * N, N);
        cout[m] = fwd.c_varphi.segment(m * N, N);
        const Eigen::VectorXcd p = pm.trig * adj.c_phi.segment(m * N, N);
        const Eigen::VectorXcd q = pm.qbasis * adj.c_varphi.segment(m * N, N);
        const Eigen::VectorXcd din = pm.trig * cin[m];
        const Eigen::VectorXcd dout = pm.trig * cout[m];
        NodeData& d = nd[m];
        d.Pc.resize(Nq);
        d.Qc.resize(Nq);
        for (int e = 0; e < 2; ++e) {
            d.sS[e].resize(Nq);
            d.sD[e].resize(Nq);
        }
        for (int j = 0; j < Nq; ++j) {
            d.Pc[j] = h * std::conj(p(j));
            d.Qc[j] = h * std::conj(q(j));
            d.sS[0][j] = h * din(j);
            d.sD[0][j] = h * din(j) / ec;
            d.sS[1][j] = -h * dout(j);
            d.sD[1][j] = -h * dout(j) / em;
        }
    }
    std::vector<Acc> acc(M);
    for (auto& a : acc) a.resize(Nq);
    for (int n = 0; n < M; ++n)
        for (int m = n; m < M; ++m) pair_terms(c, n, m, wc, nd, acc);

    // conj(<p, E_w>) = sum h conj(p) E_w; conjugated once at the end
    OperatorTerms out;
    out.E.assign(kSlots * M, 0.0);
    out.F.assign(kSlots * M, 0.0);
    const cplx ik = cplx(0.0, 1.0) * wc.k.km;
    for (int n = 0; n < M; ++n) {
        const auto& pn = c.particles[n];
        const Acc& a = acc[n];
        // singular self parts, shape slots only
        const Eigen::VectorXcd cS = cin[n] - cout[n];
        const Eigen::VectorXcd cK = cin[n] / ec - cout[n] / em;
        for (int sl = 0; sl < 2; ++sl) {
            const Eigen::VectorXcd es = pn.dS[sl] * cS;
            const Eigen::VectorXcd fs = pn.dK[sl] * cK;
            for (int j = 0; j < Nq; ++j) {
                out.E[n * kSlots + sl] += nd[n].Pc[j] * es(j);
                out.F[n * kSlots + sl] += nd[n].Qc[j] * fs(j);
            }
        }
        for (int j = 0; j < Nq; ++j) {
            const BoundarySample& x = pn.nodes[j];
            const ShapeJacobians& J = pn.jac[j];
            const cplx ui = incident_field(wc, x.x);
            const double dn = dot(wc.d, x.normal);
            for (int i = 0; i < kSlots; ++i) {
                const Vec2& dx = J.dx[i];
                const Vec2& dnu = J.dnormal[i];
                const double ds = J.dspeed[i] / x.speed;
                cplx e = dotc(dx, a.tz[0][j]) - dotc(dx, a.sz[0][j]) + ds * a.ss[0][j];
                cplx f = dotc(dx, a.tz[1][j]) - dotc(dx, a.sz[1][j]) + ds * a.ss[1][j];
                f += dot(dx, x.normal) * a.tn[j] + dotc(dnu, a.tzn[j]) - dotc(dx, a.sn[j]);
                // incident traces
                const cplx df1 = ik * dot(wc.d, dx) * ui;
                const cplx df2 = (ik / em) * (dot(wc.d, dnu) + dn * ik * dot(wc.d, dx)) * ui;
                e -= nd[n].Pc[j] * df1;
                f -= nd[n].Qc[j] * df2;
                out.E[n * kSlots + i] += e;
                out.F[n * kSlots + i] += f;
            }
        }
    }
    for (auto& v : out.E) v = std::conj(v);
    for (auto& v : out.F) v = std::conj(v);
    return out;
}

WavelengthTerms wavelength_terms(const DesignCache& c, const Setup& s, double lambda) {
    check_wave(c);
    const WaveContext wc = wave_context(s, lambda);
    ForwardSystem fs;
    AdjointSystem as;
    assemble_systems(c, wc, &fs, &as);
    const DensitySolution fwd = solve_forward(fs, lambda);
    as.g.tail(c.M() * c.N) = adjoint_rhs(fwd, c, wc, s);
    const DensitySolution adj = solve_adjoint(as, lambda);
    WavelengthTerms t;
    t.A = absorptance(fwd, c, wc, s);
    const std::vector<double> aw = dA_dw(fwd, c, wc, s);
    const OperatorTerms ot = operator_derivative_terms(fwd, adj, c, wc);
    t.G.resize(aw.size());
    for (std::size_t i = 0; i < aw.size(); ++i) t.G[i] = aw[i] - (ot.E[i] + ot.F[i]).real();
    return t;
}

GradientResult full_gradient(const DesignConfig& cfg, const Setup& s, const TargetSpectrum& target) {
    validate(s);
    if (target.values.size() != target.grid.nodes.size()) fail_argument("target length differs from its grid");
    const int threads = resolve_threads(s.threads);
    const DesignCache c = build_cache(cfg, s.disc, true, threads);
    const auto& nodes = target.grid.nodes;
    const int nl = static_cast<int>(nodes.size());
    std::vector<WavelengthTerms> terms(nl);
    parallel_for(nl, threads, [&](int i) { terms[i] = wavelength_terms(c, s, nodes[i]); });
    const std::vector<double> w = trapezoid_weights(target.grid);
    GradientResult r;
    r.grad.assign(kSlots * c.M(), 0.0);
    r.A.resize(nl);
    for (int i = 0; i < nl; ++i) {
        r.A[i] = terms[i].A;
        const double mis = terms[i].A - target.values[i];
        r.objective += w[i] * mis * mis;
        for (std::size_t j = 0; j < r.grad.size(); ++j) r.grad[j] += 2.0 * w[i] * mis * terms[i].G[j];
    }
    for (double g : r.grad)
        if (!std::isfinite(g)) fail_numerical("non-finite gradient");
    return r;
}

double objective_value(const DesignConfig& cfg, const Setup& s, const TargetSpectrum& target) {
    validate(s);
    const Spectrum sp = compute_spectrum(cfg, s, target.grid);
    return objective(sp, target);
}

} // namespace plasmo
