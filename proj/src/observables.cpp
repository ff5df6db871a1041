/*
 * src/observables.cpp
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

#include "plasmo/observables.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "plasmo/kernels.hpp"
#include "plasmo/parallel.hpp"

namespace plasmo {

namespace {

double wrap(double x) {
    x = std::fmod(x + kPi, 2.0 * kPi);
    if (x < 0) x += 2.0 * kPi;
    return x - kPi;
}

// Gauss-Legendre nodes on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

} // namespace

bool arc_contains(const MeasurementArc& arc, double theta) {
    return std::abs(wrap(theta - arc.theta_bar)) < arc.delta_theta;
}

ArcQuadrature arc_quadrature(const Setup& s) {
    ArcQuadrature q;
    const int n = s.disc.arc_nodes;
    const double lo = s.arc.theta_bar - s.arc.delta_theta;
    const double step = 2.0 * s.arc.delta_theta / (n - 1);
    q.theta.resize(n);
    q.weight.assign(n, step);
    for (int i = 0; i < n; ++i) q.theta[i] = lo + step * i;
    q.weight.front() *= 0.5;
    q.weight.back() *= 0.5;
    q.contains_incident = arc_contains(s.arc, s.incident_angle);
    q.L = 2.0 * s.arc.radius * std::sin(s.arc.delta_theta) * std::cos(s.arc.theta_bar - s.incident_angle);
    return q;
}

SourceSamples exterior_sources(const DensitySolution& sol, const DesignCache& c) {
    const double h = 2.0 * kPi / c.Nq;
    SourceSamples src;
    src.x.reserve(c.M() * c.Nq);
    src.w.reserve(c.M() * c.Nq);
    for (int m = 0; m < c.M(); ++m) {
        const auto& pm = c.particles[m];
        const Eigen::VectorXcd dens = pm.trig * sol.c_varphi.segment(m * c.N, c.N); // |y'| varphi
        for (int q = 0; q < c.Nq; ++q) {
            src.x.push_back(pm.nodes[q].x);
            src.w.push_back(h * dens(q));
        }
    }
    return src;
}

std::vector<cplx> far_field_h(const SourceSamples& src, cplx k, const std::vector<double>& theta) {
    const cplx ik = cplx(0.0, 1.0) * k;
    std::vector<cplx> out(theta.size(), 0.0);
    for (std::size_t a = 0; a < theta.size(); ++a) {
        const Vec2 xh{std::cos(theta[a]), std::sin(theta[a])};
        cplx acc = 0.0;
        for (std::size_t q = 0; q < src.x.size(); ++q) acc += std::exp(-ik * dot(xh, src.x[q])) * src.w[q];
        out[a] = acc;
    }
    return out;
}

std::vector<cplx> far_field_h(const DensitySolution& sol, const DesignCache& c, const WaveContext& wc,
                              const std::vector<double>& theta) {
    return far_field_h(exterior_sources(sol, c), wc.k.km, theta);
}

cplx far_field_h(const DensitySolution& sol, const DesignCache& c, const WaveContext& wc, double theta) {
    return far_field_h(sol, c, wc, std::vector<double>{theta})[0];
}

cplx far_field(const DensitySolution& sol, const DesignCache& c, const WaveContext& wc, double theta) {
    const double k = wc.k.km.real();
    return -std::exp(cplx(0.0, kPi / 4)) / std::sqrt(8.0 * kPi * k) * far_field_h(sol, c, wc, theta);
}

EnergyFlows energy_flows_asymptotic(const DensitySolution& sol, const DesignCache& c, const WaveContext& wc,
                                    const Setup& s) {
    const ArcQuadrature aq = arc_quadrature(s);
    const double k = wc.k.km.real();
    const std::vector<cplx> h = far_field_h(sol, c, wc, aq.theta);
    double nrm2 = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) nrm2 += aq.weight[i] * std::norm(h[i]);
    EnergyFlows e;
    e.incident = 2.0 * k * aq.L;
    // 2 k ||u_inf||^2 with |u_inf|^2 = |h|^2/(8 pi k)
    e.scattered = nrm2 / (4.0 * kPi);
    if (aq.contains_incident) e.interference = 2.0 * far_field_h(sol, c, wc, s.incident_angle).imag();
    return e;
}

double absorptance(const SourceSamples& src, const WaveContext& wc, const Setup& s) {
    const ArcQuadrature aq = arc_quadrature(s);
    if (aq.L == 0.0) fail_argument("measurement arc has zero incident flux");
    const double k = wc.k.km.real();
    std::vector<double> th = aq.theta;
    th.push_back(s.incident_angle);
    const std::vector<cplx> h = far_field_h(src, wc.k.km, th);
    double nrm2 = 0.0;
    for (std::size_t i = 0; i < aq.theta.size(); ++i) nrm2 += aq.weight[i] * std::norm(h[i]);
    double inter = 0.0;
    if (aq.contains_incident) inter = (cplx(0.0, -1.0) * h.back() / k).real();
    return -(nrm2 / (8.0 * k * kPi) + inter) / aq.L;
}

double absorptance(const DensitySolution& sol, const DesignCache& c, const WaveContext& wc, const Setup& s) {
    return absorptance(exterior_sources(sol, c), wc, s);
}

CrossSections cross_sections(const SourceSamples& src, const WaveContext& wc, const Setup& s) {
    const int n = s.disc.circle_nodes;
    std::vector<double> th(n + 1);
    for (int i = 0; i < n; ++i) th[i] = 2.0 * kPi * i / n;
    th[n] = s.incident_angle;
    const std::vector<cplx> h = far_field_h(src, wc.k.km, th);
    const double k = wc.k.km.real();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += std::norm(h[i]);
    CrossSections q;
    q.extinction = -h[n].imag() / k;
    q.scattering = (2.0 * kPi / n) * acc / (8.0 * kPi * k);
    q.absorption = q.extinction - q.scattering;
    return q;
}

CrossSections cross_sections(const DensitySolution& sol, const DesignCache& c, const WaveContext& wc,
                             const Setup& s) {
    return cross_sections(exterior_sources(sol, c), wc, s);
}

FieldValue scattered_field(const SourceSamples& src, const WaveContext& wc, Vec2 x) {
    FieldValue f{0.0, {0.0, 0.0}};
    for (std::size_t q = 0; q < src.x.size(); ++q) {
        const Vec2 z = x - src.x[q];
        const double r = norm(z);
        if (r < 1e-9) fail_argument("field point lies on a particle boundary");
        const Radial g = helmholtz_radial(r, wc.k.km);
        f.u += g.v * src.w[q];
        f.grad[0] += g.d1 * (z.x / r) * src.w[q];
        f.grad[1] += g.d1 * (z.y / r) * src.w[q];
    }
    return f;
}

FieldValue scattered_field(const DensitySolution& sol, const DesignCache& c, const WaveContext& wc, Vec2 x) {
    return scattered_field(exterior_sources(sol, c), wc, x);
}

EnergyFlows finite_R_flux(const DensitySolution& sol, const DesignCache& c, const WaveContext& wc, const Setup& s,
                          double radius, int panels) {
    for (const auto& p : c.particles) {
        const double reach = std::hypot(p.w.x1, p.w.x2) + p.w.a;
        if (reach >= radius) fail_argument("measurement arc intersects a particle");
    }
    const SourceSamples src = exterior_sources(sol, c);
    std::vector<double> gx, gw;
    gauss_legendre(16, gx, gw);
    const double lo = s.arc.theta_bar - s.arc.delta_theta;
    const double width = 2.0 * s.arc.delta_theta / panels;
    const cplx ik = cplx(0.0, 1.0) * wc.k.km;
    EnergyFlows e;
    const double k = wc.k.km.real();
    e.incident = 4.0 * k * radius * std::sin(s.arc.delta_theta) * std::cos(s.arc.theta_bar - s.incident_angle);
    for (int p = 0; p < panels; ++p) {
        for (std::size_t i = 0; i < gx.size(); ++i) {
            const double th = lo + width * (p + 0.5 * (gx[i] + 1.0));
            const double wq = 0.5 * width * gw[i] * radius;
            const Vec2 nu{std::cos(th), std::sin(th)};
            const Vec2 x = radius * nu;
            const FieldValue us = scattered_field(src, wc, x);
            const cplx ui = incident_field(wc, x);
            const cplx dui = ik * dot(wc.d, nu) * ui;
            const cplx dus = us.grad[0] * nu.x + us.grad[1] * nu.y;
            e.scattered += wq * 2.0 * (std::conj(us.u) * dus).imag();
            e.interference += wq * 2.0 * (std::conj(ui) * dus + std::conj(us.u) * dui).imag();
        }
    }
    return e;
}

std::vector<double> Spectrum::absorptances() const {
    std::vector<double> a(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) a[i] = values[i].A;
    return a;
}

Spectrum compute_spectrum(const DesignCache& cache, const Setup& s, const WavelengthGrid& grid) {
    Spectrum sp;
    sp.grid = grid;
    sp.values.resize(grid.nodes.size());
    parallel_for(static_cast<int>(grid.nodes.size()), resolve_threads(s.threads), [&](int i) {
        const double lam = grid.nodes[i];
        const WaveContext wc = wave_context(s, lam);
        const DensitySolution sol = solve_forward(assemble_forward(cache, wc), lam);
        const CrossSections q = cross_sections(sol, cache, wc, s);
        sp.values[i] = {lam, absorptance(sol, cache, wc, s), q.extinction, q.scattering, q.absorption};
    });
    return sp;
}

Spectrum compute_spectrum(const DesignConfig& cfg, const Setup& s, const WavelengthGrid& grid) {
    const DesignCache cache = build_cache(cfg, s.disc, false, resolve_threads(s.threads));
    return compute_spectrum(cache, s, grid);
}

TargetSpectrum constant_target(const WavelengthGrid& grid, double value) {
    return {grid, std::vector<double>(grid.nodes.size(), value)};
}

TargetSpectrum band_target(const WavelengthGrid& grid, const std::vector<std::pair<double, double>>& bands,
                           double value) {
    TargetSpectrum t{grid, std::vector<double>(grid.nodes.size(), 0.0)};
    for (std::size_t i = 0; i < grid.nodes.size(); ++i)
        for (const auto& b : bands)
            if (grid.nodes[i] >= b.first && grid.nodes[i] <= b.second) t.values[i] = value;
    return t;
}

double objective(const std::vector<double>& A, const TargetSpectrum& target) {
    if (A.size() != target.values.size()) fail_argument("spectrum and target grids differ");
    const std::vector<double> w = trapezoid_weights(target.grid);
    double J = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i) {
        const double d = A[i] - target.values[i];
        J += w[i] * d * d;
    }
    return J;
}

double objective(const Spectrum& spec, const TargetSpectrum& target) {
    if (spec.grid.nodes.size() != target.grid.nodes.size()) fail_argument("spectrum and target grids differ");
    for (std::size_t i = 0; i < spec.grid.nodes.size(); ++i)
        if (std::abs(spec.grid.nodes[i] - target.grid.nodes[i]) > 1e-9 * std::abs(target.grid.nodes[i]))
            fail_argument("spectrum and target grids differ");
    return objective(spec.absorptances(), target);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_spectrum_csv(const std::string& path, const Spectrum& spec, const std::string& header) {
    std::ofstream os(path);
    if (!os) fail_argument("cannot open " + path + " for writing");
    os << header << "lambda_nm,A,Qe,Qs,Qa\n";
    for (const auto& v : spec.values)
        os << format_double(v.lambda) << ',' << format_double(v.A) << ',' << format_double(v.Qe) << ','
           << format_double(v.Qs) << ',' << format_double(v.Qa) << '\n';
}

} // namespace plasmo
