/*
 * tests/acceptance.cpp
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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failures.
// Optional arguments: path of the plasmo CLI and of the CLI fixture directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "fd.hpp"
#include "flux_probe.hpp"
#include "oracles.hpp"
#include "plasmo/initializer.hpp"
#include "plasmo/nystrom.hpp"
#include "plasmo/optimizer.hpp"

using namespace plasmo;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "[x] ") + what;
    }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

DesignConfig single(double a, double b, double theta = kPi / 4) {
    DesignConfig c;
    c.particles = {{a, b, theta, 0, 0}};
    return c;
}

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

// Interior local maxima plus rising or falling edges, above 1% of the largest value.
std::vector<int> peaks(const std::vector<double>& y) {
    const double top = *std::max_element(y.begin(), y.end());
    std::vector<int> p;
    const int n = static_cast<int>(y.size());
    for (int i = 0; i < n; ++i) {
        const bool left = i == 0 || y[i] > y[i - 1];
        const bool right = i == n - 1 || y[i] > y[i + 1];
        if (left && right && y[i] >= 0.01 * top) p.push_back(i);
    }
    return p;
}

// The two largest local maxima.
std::pair<double, double> main_pair(const WavelengthGrid& g, const std::vector<double>& A) {
    std::vector<int> p = peaks(A);
    std::sort(p.begin(), p.end(), [&](int i, int j) { return A[i] > A[j]; });
    if (p.size() < 2) return {g.nodes[p[0]], g.nodes[p[0]]};
    return {g.nodes[p[0]], g.nodes[p[1]]};
}

Outcome zero_contrast() {
    Outcome o;
    Setup s;
    s.material.model = ParticleMaterial::Model::Constant;
    s.material.constant_permittivity = {1.0, 0.0};
    const WavelengthGrid g = make_grid(150, 550, 10);
    double uinf = 0, amax = 0;
    for (double b : {1.0, 2.0, 4.0, 6.0, 8.0, 9.0})
        for (double lam : g.nodes) {
            const Solved r = solve(single(10, b, 0.7), s, lam);
            for (int j = 0; j < 64; ++j)
                uinf = std::max(uinf, std::abs(far_field(r.sol, r.cache, r.wc, 2 * kPi * j / 64)));
            amax = std::max(amax, std::abs(absorptance(r.sol, r.cache, r.wc, s)));
        }
    o.require(uinf <= 1e-9, fmt("max |u_inf| %.2e", uinf));
    o.require(amax <= 1e-9, fmt("max |A| %.2e", amax));
    return o;
}

Outcome spectral_identities() {
    Outcome o;
    double rk = 0, rs = 0;
    for (double b : {6.0, 4.0, 2.0}) {
        const EllipseParams w{10, b, 0.0, 0.0, 0.0};
        const EllipticData e = elliptic_data(w);
        for (int i = 0; i < 10; ++i) {
            // sin orders 1..4, then cos orders 0..5
            const bool is_sin = i < 4;
            const int n = is_sin ? i + 1 : i - 4;
            const double al = 0.5 * std::exp(-2.0 * n * e.rho);
            auto trig = [&](double t) { return is_sin ? std::sin(n * t) : std::cos(n * t); };
            auto psi = [&](double t) { return trig(t) / metric_xi(e, t); };
            for (int j = 0; j < 17; ++j) {
                const double t = 0.03 + 2 * kPi * j / 17;
                const double lam = n == 0 ? 0.5 : (is_sin ? -al : al);
                rk = std::max(rk, std::abs(oracle::laplace_kstar(w, psi, t) - lam * psi(t)));
                double sref;
                if (n == 0)
                    sref = e.rho + std::log(0.5 * e.c);
                else
                    sref = -(is_sin ? 0.5 - al : 0.5 + al) * trig(t) / n;
                rs = std::max(rs, std::abs(oracle::laplace_single(w, psi, t) - sref));
            }
        }
    }
    o.require(rk <= 1e-6, fmt("K* residual %.2e", rk));
    o.require(rs <= 1e-6, fmt("S residual %.2e", rs));
    return o;
}

// Grid indices kept after dropping the three points nearest each absorptance peak of a fine scan.
std::vector<int> off_resonance(const DesignConfig& cfg, const Setup& s, const WavelengthGrid& g) {
    const WavelengthGrid fine = make_grid(g.lambda_min, g.lambda_max, 401);
    const std::vector<double> A = compute_spectrum(cfg, s, fine).absorptances();
    std::vector<bool> drop(g.nodes.size(), false);
    for (int p : peaks(A)) {
        std::vector<int> idx(g.nodes.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int x, int y) {
            return std::abs(g.nodes[x] - fine.nodes[p]) < std::abs(g.nodes[y] - fine.nodes[p]);
        });
        for (int k = 0; k < 3; ++k) drop[idx[k]] = true;
    }
    std::vector<int> keep;
    for (std::size_t i = 0; i < drop.size(); ++i)
        if (!drop[i]) keep.push_back(static_cast<int>(i));
    return keep;
}

Outcome cross_validation() {
    Outcome o;
    Setup s;
    const WavelengthGrid g = make_grid(150, 550, 20);
    double qe = 0, pq = 0;
    int used = 0;
    for (double b : {4.0, 6.0, 8.0}) {
        const DesignConfig cfg = single(10, b);
        for (int i : off_resonance(cfg, s, g)) {
            const SolverComparison c = compare_solvers(cfg, s, g.nodes[i], 200);
            qe = std::max(qe, c.qe_rel);
            pq = std::max({pq, c.p_rel, c.q_rel});
            ++used;
        }
    }
    o.require(used > 0 && qe <= 1e-4, fmt("b=4,6,8 over %g points: Qe rel %.2e", used, qe));
    o.require(used > 0 && pq <= 1e-3, fmt("adjoint p,q rel L2 %.2e", pq));

    // flat particle
    const DesignConfig flat = single(10, 1);
    Setup s20 = s;
    s20.disc.basis = 20;
    const std::vector<int> keep = off_resonance(flat, s, g);
    const Spectrum r10 = compute_spectrum(flat, s, g), r20 = compute_spectrum(flat, s20, g);
    double self = 0, ny = 0;
    for (int i : keep) {
        self = std::max(self, std::abs(r10.values[i].Qe / r20.values[i].Qe - 1));
        const WaveContext wc = wave_context(s, g.nodes[i]);
        const double q2 = cross_sections(exterior_sources(solve_forward_nystrom(flat, wc, 200)), wc, s).extinction;
        const double q4 = cross_sections(exterior_sources(solve_forward_nystrom(flat, wc, 400)), wc, s).extinction;
        ny = std::max(ny, std::abs(q2 / q4 - 1));
    }
    o.require(!keep.empty() && self <= 1e-6, fmt("b=1 RBM N=10 vs N=20 %.2e", self));
    o.require(ny >= 10 * self, fmt("b=1 Nystrom n=200 vs 400 %.2e (needs >= 10x RBM self-error)", ny));
    return o;
}

Outcome energy_flow() {
    Outcome o;
    Setup s;
    const Solved r = solve(single(10, 4), s, 320.0);
    const EnergyFlows inf = energy_flows_asymptotic(r.sol, r.cache, r.wc, s);
    const std::vector<double> radii{500.0, 1000.0, 2000.0, 4000.0};
    std::vector<double> gap;
    for (double R : radii) gap.push_back(probe::interference_gap(r.sol, r.cache, r.wc, s, R, inf.interference));
    const double slope = probe::loglog_slope(radii, gap);
    const double gs = std::abs(finite_R_flux(r.sol, r.cache, r.wc, s, 4000.0).scattered - inf.scattered);
    o.require(gs <= 1e-4 * std::abs(inf.scattered), fmt("E^s gap at R=4000 %.2e rel", gs / std::abs(inf.scattered)));
    o.require(slope >= -1.0 && slope <= -0.25, fmt("E' log-log slope %.3f", slope));

    const WavelengthGrid g = make_grid(150, 550, 41);
    double worst = 1e300;
    for (double b : {1.0, 2.0, 4.0, 8.0})
        for (const SpectrumPoint& p : compute_spectrum(single(10, b), s, g).values)
            worst = std::min(worst, p.Qa / p.Qe + 1e-8);
    o.require(worst >= 0.0, fmt("min Qa/Qe %.2e", worst - 1e-8));
    return o;
}

Outcome phenomenology() {
    Outcome o;
    Setup s;
    const WavelengthGrid g = make_grid(150, 550, 401);
    const double step = g.nodes[1] - g.nodes[0];

    std::vector<double> sep;
    for (double b : {8.0, 6.0, 4.0, 2.0}) {
        const auto pr = main_pair(g, compute_spectrum(single(10, b), s, g).absorptances());
        sep.push_back(std::abs(pr.first - pr.second));
    }
    bool inc = true;
    for (std::size_t i = 1; i < sep.size(); ++i) inc = inc && sep[i] > sep[i - 1];
    o.require(inc, fmt("separations b=8,6,4,2: %g %g %g %g nm", sep[0], sep[1], sep[2], sep[3]));

    // every peak seen at any angle lies within one grid step of a peak at pi/4
    const std::vector<double> ref_A = compute_spectrum(single(10, 4, kPi / 4), s, g).absorptances();
    const std::vector<int> ref = peaks(ref_A);
    double shift = 0;
    for (double th : {0.0, kPi / 8, 3 * kPi / 8, kPi / 2})
        for (int p : peaks(compute_spectrum(single(10, 4, th), s, g).absorptances())) {
            double d = 1e300;
            for (int q : ref) d = std::min(d, std::abs(g.nodes[p] - g.nodes[q]));
            shift = std::max(shift, d);
        }
    o.require(shift <= step + 1e-9, fmt("max peak shift across theta %g nm (step %g)", shift, step));

    const WavelengthGrid gc = make_grid(150, 550, 101);
    const EllipseParams p1{10, 4, 0.3, -300, 0}, p2{14, 2, 1.2, 300, 0};
    DesignConfig c1, c2, both;
    c1.particles = {p1};
    c2.particles = {p2};
    both.particles = {p1, p2};
    const auto A1 = compute_spectrum(c1, s, gc).absorptances(), A2 = compute_spectrum(c2, s, gc).absorptances();
    const auto A = compute_spectrum(both, s, gc).absorptances();
    double mx = 0, err = 0;
    for (std::size_t i = 0; i < A.size(); ++i) {
        mx = std::max(mx, A1[i] + A2[i]);
        err = std::max(err, std::abs(A[i] - A1[i] - A2[i]));
    }
    o.require(err <= 0.05 * mx, fmt("pair 600 nm apart: deviation %.4f of max", err / mx));
    return o;
}

Outcome gradient() {
    Outcome o;
    Setup s;
    DesignConfig cfg;
    cfg.particles = {{10, 4, 0.7, -20, 5}, {12, 6, 2.0, 25, -10}};
    const TargetSpectrum t = constant_target(make_grid(300, 500, 5), 0.3);
    const GradientResult r = full_gradient(cfg, s, t);
    const auto ref = fd::central(cfg, [&](const DesignConfig& c) { return objective_value(c, s, t); });
    double ginf = 0, worst = 0;
    for (double v : r.grad) ginf = std::max(ginf, std::abs(v));
    for (std::size_t i = 0; i < ref.size(); ++i)
        worst = std::max(worst, std::abs(r.grad[i] - ref[i]) / std::max(std::abs(ref[i]), 1e-12 * ginf));
    o.require(r.grad.size() == 10 && worst <= 1e-4, fmt("max relative deviation from FD %.2e", worst));
    return o;
}

double total(const std::vector<double>& c) {
    double n = 0;
    for (double v : c) n += v;
    return n;
}

Outcome initializer() {
    Outcome o;
    Setup s;
    DatasetSpec spec;
    spec.b_count = 10;
    spec.theta_count = 5;
    const WavelengthGrid g = make_grid(150, 550, 50);
    const AbsorptanceDataset d = build_dataset(spec, s, g, DesignBounds{});
    o.require(d.entries.size() == 50, fmt("dataset L=%g", static_cast<double>(d.entries.size())));
    const TargetSpectrum targets[2] = {constant_target(g, 0.3), band_target(g, {{150, 300}, {400, 550}}, 0.3)};
    const char* names[2] = {"constant", "bands"};
    for (int k = 0; k < 2; ++k) {
        const CountVector rel = solve_relaxed(d, targets[k]);
        const CountVector rnd = round_counts(rel);
        PsoOptions opt;
        opt.seed = 11;
        opt.budget = 300;
        const CountVector ref = refine_heuristic(d, targets[k], rnd, opt);
        const double r1 = fit_residual(d, targets[k], rel.counts);
        const double r2 = fit_residual(d, targets[k], ref.counts);
        const double r3 = fit_residual(d, targets[k], rnd.counts);
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s: relaxed %.4g <= refined %.4g <= rounded %.4g (M=%g)", names[k], r1, r2, r3,
                      total(ref.counts));
        o.require(r1 <= r2 + 1e-12 && r2 <= r3, buf);
    }

    // five Gaussian bumps, integer-achievable target, refinement from a wrong start
    AbsorptanceDataset syn;
    syn.grid = make_grid(150, 550, 41);
    const double centers[5] = {200, 240, 280, 330, 500};
    for (int l = 0; l < 5; ++l) {
        DatasetEntry e;
        e.params = {10, 1.0 + l, 0, 0, 0};
        for (double lam : syn.grid.nodes) e.A.push_back(0.05 * std::exp(-std::pow((lam - centers[l]) / 45.0, 2)));
        syn.entries.push_back(e);
    }
    const std::vector<double> truth{2, 0, 1, 3, 1};
    TargetSpectrum t{syn.grid, std::vector<double>(syn.grid.nodes.size(), 0.0)};
    for (int l = 0; l < 5; ++l)
        for (std::size_t i = 0; i < t.values.size(); ++i) t.values[i] += truth[l] * syn.entries[l].A[i];
    PsoOptions opt;
    opt.seed = 5;
    const CountVector c = refine_heuristic(syn, t, {{3, 1, 0, 2, 1}, CountStage::Rounded}, opt);
    const double res = fit_residual(syn, t, c.counts);
    const double scale = fit_residual(syn, t, std::vector<double>(5, 0.0));
    o.require(c.counts == truth && res <= 1e-14 * scale, fmt("synthetic: exact counts, residual %.1e", res));
    return o;
}

Outcome optimization() {
    Outcome o;
    Setup s;
    const WavelengthGrid g = make_grid(150, 550, 50);
    DesignConfig truth, start;
    truth.particles = {{12, 4, 0.6, -40, -40}, {10, 7, 1.2, 40, -40}, {14, 3, 0.2, -40, 40}, {9, 5, 2.0, 40, 40}};
    start.particles = {{10, 6, 0.8, -40, -40}, {12, 6, 1.0, 40, -40}, {12, 5, 0.5, -40, 40}, {11, 6, 1.7, 40, 40}};
    const TargetSpectrum t{g, compute_spectrum(truth, s, g).absorptances()};
    OptimizerOptions opt;
    opt.step = 0.2;
    opt.iterations = 100;
    bool feasible = true;
    const OptimizationState st = run(start, s, t, opt, [&](const OptimizationState& x) {
        const DesignBounds& b = x.config.bounds;
        for (const EllipseParams& p : x.config.particles) {
            const double eta = p.b / p.a;
            feasible = feasible && p.a >= b.a_min && p.a <= b.a_max && eta >= b.eta_min - 1e-12 &&
                       eta <= b.eta_max + 1e-12 && p.theta >= 0 && p.theta <= 2 * kPi;
        }
    });
    const double j0 = st.history.front().objective, j1 = st.history.back().objective;
    o.require(j1 <= 0.5 * j0, fmt("J %.4g -> %.4g (%.0f%%)", j0, j1, 100 * j1 / j0));
    o.require(feasible, "all iterates feasible");
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism(const char* cli, const char* fixtures) {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "plasmo_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    DesignConfig cfg;
    cfg.particles = {{10, 4, 0.7, -20, 5}, {12, 6, 2.0, 25, -10}};
    const WavelengthGrid g = make_grid(150, 550, 41);
    Setup s1, s2;
    s1.threads = 1;
    s2.threads = 2;
    write_spectrum_csv((dir / "a.csv").string(), compute_spectrum(cfg, s1, g), "# run\n");
    write_spectrum_csv((dir / "b.csv").string(), compute_spectrum(cfg, s2, g), "# run\n");
    o.require(slurp(dir / "a.csv") == slurp(dir / "b.csv"), "spectrum CSV across thread counts");

    DatasetSpec spec;
    spec.b_count = 3;
    spec.theta_count = 2;
    const WavelengthGrid gd = make_grid(150, 550, 11);
    save_dataset(build_dataset(spec, s1, gd, {}), spec, s1, (dir / "d1").string());
    save_dataset(build_dataset(spec, s2, gd, {}), spec, s2, (dir / "d2").string());
    bool same = true;
    for (const char* f : {"manifest.json", "entries.csv", "spectra.csv"})
        same = same && slurp(dir / "d1" / f) == slurp(dir / "d2" / f);
    o.require(same, "dataset files across thread counts");

    if (cli && fixtures) {
        bool ok = true;
        for (const char* cmd : {"sweep", "optimize"}) {
            for (int k = 1; k <= 2; ++k) {
                const std::string line = std::string("\"") + cli + "\" " + cmd + " --config \"" + fixtures + "/" +
                                         cmd + ".json\" --out \"" + (dir / (cmd + std::to_string(k))).string() +
                                         "\" --seed 3 > /dev/null 2>&1";
                ok = ok && std::system(line.c_str()) == 0;
            }
            for (const auto& e : fs::directory_iterator(dir / (std::string(cmd) + "1")))
                ok = ok && slurp(e.path()) == slurp(dir / (std::string(cmd) + "2") / e.path().filename());
        }
        o.require(ok, "CLI sweep and optimize outputs repeat byte for byte");
    }
    fs::remove_all(dir);
    return o;
}

} // namespace

int main(int argc, char** argv) {
    const char* cli = argc > 2 ? argv[1] : nullptr;
    const char* fixtures = argc > 2 ? argv[2] : nullptr;
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"zero-contrast null test", zero_contrast},
        {"spectral identities", spectral_identities},
        {"solver cross-validation", cross_validation},
        {"energy-flow asymptotics", energy_flow},
        {"physics phenomenology", phenomenology},
        {"gradient correctness", gradient},
        {"initializer chain", initializer},
        {"optimization loop", optimization},
        {"determinism", [&] { return determinism(cli, fixtures); }},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %s (%.0f s): %s\n", o.pass ? "PASS" : "FAIL", name, sec, o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures;
}
