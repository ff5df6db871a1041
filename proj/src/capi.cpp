/*
 * src/capi.cpp
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

#include "plasmo/plasmo.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "plasmo/initializer.hpp"
#include "plasmo/nystrom.hpp"
#include "plasmo/optimizer.hpp"

using namespace plasmo;

struct plasmo_setup {
    Setup setup;
    WavelengthGrid grid = make_grid(150.0, 550.0, 401);
};
struct plasmo_design {
    DesignConfig cfg;
};
struct plasmo_spectrum {
    Spectrum spectrum;
};
struct plasmo_dataset {
    AbsorptanceDataset data;
    DatasetSpec spec;
};

namespace {

thread_local std::string g_last_error;

template <class F>
plasmo_status guard(F&& f) {
    try {
        f();
        g_last_error.clear();
        return PLASMO_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return e.kind() == ErrorKind::Numerical ? PLASMO_ERR_NUMERICAL : PLASMO_ERR_ARGUMENT;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return PLASMO_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PLASMO_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) fail_argument(std::string(what) + " is null");
}

TargetSpectrum target_from(const WavelengthGrid& grid, const double* v, size_t n) {
    need(v, "target");
    if (n != grid.nodes.size()) fail_argument("target length differs from the wavelength grid");
    return {grid, std::vector<double>(v, v + n)};
}

plasmo_design* wrap(const DesignConfig& cfg) { return new plasmo_design{cfg}; }

} // namespace

extern "C" {

const char* plasmo_last_error(void) { return g_last_error.c_str(); }
const char* plasmo_version(void) { return PLASMO_VERSION; }

plasmo_status plasmo_setup_create(plasmo_setup** out) {
    return guard([&] {
        need(out, "output handle");
        *out = new plasmo_setup();
    });
}
void plasmo_setup_destroy(plasmo_setup* s) { delete s; }

plasmo_status plasmo_setup_set_drude(plasmo_setup* s, double wp, double tau) {
    return guard([&] {
        need(s, "setup");
        DrudeMaterial m{wp, tau};
        validate(m);
        s->setup.material.model = ParticleMaterial::Model::Drude;
        s->setup.material.drude = m;
    });
}
plasmo_status plasmo_setup_set_constant_permittivity(plasmo_setup* s, double re, double im) {
    return guard([&] {
        need(s, "setup");
        if (im < 0.0) fail_argument("permittivity must have non-negative imaginary part");
        s->setup.material.model = ParticleMaterial::Model::Constant;
        s->setup.material.constant_permittivity = {re, im};
    });
}
plasmo_status plasmo_setup_set_medium(plasmo_setup* s, double eps, double mu) {
    return guard([&] {
        need(s, "setup");
        BackgroundMedium m{eps, mu};
        validate(m);
        s->setup.medium = m;
    });
}
plasmo_status plasmo_setup_set_arc(plasmo_setup* s, double radius, double theta_bar, double delta_theta) {
    return guard([&] {
        need(s, "setup");
        Setup t = s->setup;
        t.arc = {radius, theta_bar, delta_theta};
        validate(t);
        s->setup = t;
    });
}
plasmo_status plasmo_setup_set_incident_angle(plasmo_setup* s, double theta0) {
    return guard([&] {
        need(s, "setup");
        Setup t = s->setup;
        t.incident_angle = theta0;
        validate(t);
        s->setup = t;
    });
}
plasmo_status plasmo_setup_set_grid(plasmo_setup* s, double lmin, double lmax, int count) {
    return guard([&] {
        need(s, "setup");
        s->grid = make_grid(lmin, lmax, count);
    });
}
plasmo_status plasmo_setup_set_basis(plasmo_setup* s, int basis, int quadrature) {
    return guard([&] {
        need(s, "setup");
        Setup t = s->setup;
        t.disc.basis = basis;
        t.disc.quadrature = quadrature;
        validate(t);
        s->setup = t;
    });
}
plasmo_status plasmo_setup_set_threads(plasmo_setup* s, int threads) {
    return guard([&] {
        need(s, "setup");
        if (threads < 0) fail_argument("thread count must be non-negative");
        s->setup.threads = threads;
    });
}
size_t plasmo_setup_grid_size(const plasmo_setup* s) { return s ? s->grid.nodes.size() : 0; }
plasmo_status plasmo_setup_grid_nodes(const plasmo_setup* s, double* out, size_t len) {
    return guard([&] {
        need(s, "setup");
        need(out, "output buffer");
        if (len < s->grid.nodes.size()) fail_argument("output buffer too short");
        std::memcpy(out, s->grid.nodes.data(), s->grid.nodes.size() * sizeof(double));
    });
}

plasmo_status plasmo_design_create(plasmo_design** out) {
    return guard([&] {
        need(out, "output handle");
        *out = new plasmo_design();
    });
}
plasmo_status plasmo_design_clone(const plasmo_design* d, plasmo_design** out) {
    return guard([&] {
        need(d, "design");
        need(out, "output handle");
        *out = wrap(d->cfg);
    });
}
void plasmo_design_destroy(plasmo_design* d) { delete d; }

plasmo_status plasmo_design_add(plasmo_design* d, const double p[5]) {
    return guard([&] {
        need(d, "design");
        need(p, "parameters");
        EllipseParams w{p[0], p[1], p[2], p[3], p[4]};
        validate(w);
        d->cfg.particles.push_back(w);
    });
}
size_t plasmo_design_size(const plasmo_design* d) { return d ? d->cfg.particles.size() : 0; }
plasmo_status plasmo_design_get(const plasmo_design* d, size_t i, double p[5]) {
    return guard([&] {
        need(d, "design");
        need(p, "parameters");
        if (i >= d->cfg.particles.size()) fail_argument("particle index out of range");
        const auto& w = d->cfg.particles[i];
        p[0] = w.a;
        p[1] = w.b;
        p[2] = w.theta;
        p[3] = w.x1;
        p[4] = w.x2;
    });
}
plasmo_status plasmo_design_set_bounds(plasmo_design* d, double a_min, double a_max, double eta_min, double eta_max) {
    return guard([&] {
        need(d, "design");
        if (!(0.0 < a_min && a_min <= a_max) || !(0.0 < eta_min && eta_min <= eta_max && eta_max < 1.0))
            fail_argument("bounds need 0 < a_min <= a_max and 0 < eta_min <= eta_max < 1");
        d->cfg.bounds = {a_min, a_max, eta_min, eta_max};
    });
}
plasmo_status plasmo_design_get_bounds(const plasmo_design* d, double b[4]) {
    return guard([&] {
        need(d, "design");
        need(b, "output buffer");
        b[0] = d->cfg.bounds.a_min;
        b[1] = d->cfg.bounds.a_max;
        b[2] = d->cfg.bounds.eta_min;
        b[3] = d->cfg.bounds.eta_max;
    });
}
plasmo_status plasmo_design_set_spacing(plasmo_design* d, double s1, double s2) {
    return guard([&] {
        need(d, "design");
        if (!(s1 > 0.0 && s2 > 0.0)) fail_argument("spacing must be positive");
        d->cfg.spacing1 = s1;
        d->cfg.spacing2 = s2;
    });
}
plasmo_status plasmo_design_validate(const plasmo_design* d, int check_bounds) {
    return guard([&] {
        need(d, "design");
        validate(d->cfg, check_bounds != 0);
    });
}
size_t plasmo_design_overlaps(const plasmo_design* d) { return d ? overlapping_pairs(d->cfg).size() : 0; }

plasmo_status plasmo_spectrum_compute(const plasmo_setup* s, const plasmo_design* d, plasmo_spectrum** out) {
    return guard([&] {
        need(s, "setup");
        need(d, "design");
        need(out, "output handle");
        *out = new plasmo_spectrum{compute_spectrum(d->cfg, s->setup, s->grid)};
    });
}
void plasmo_spectrum_destroy(plasmo_spectrum* sp) { delete sp; }
size_t plasmo_spectrum_size(const plasmo_spectrum* sp) { return sp ? sp->spectrum.values.size() : 0; }
plasmo_status plasmo_spectrum_row(const plasmo_spectrum* sp, size_t i, double row[5]) {
    return guard([&] {
        need(sp, "spectrum");
        need(row, "output buffer");
        if (i >= sp->spectrum.values.size()) fail_argument("spectrum row out of range");
        const auto& v = sp->spectrum.values[i];
        row[0] = v.lambda;
        row[1] = v.A;
        row[2] = v.Qe;
        row[3] = v.Qs;
        row[4] = v.Qa;
    });
}
plasmo_status plasmo_spectrum_write_csv(const plasmo_spectrum* sp, const char* path, const char* header) {
    return guard([&] {
        need(sp, "spectrum");
        need(path, "path");
        write_spectrum_csv(path, sp->spectrum, header ? header : "");
    });
}

plasmo_status plasmo_objective_gradient(const plasmo_setup* s, const plasmo_design* d, const double* target,
                                        size_t n, double* objective, double* grad, size_t grad_len) {
    return guard([&] {
        need(s, "setup");
        need(d, "design");
        const TargetSpectrum t = target_from(s->grid, target, n);
        if (!grad) {
            const double J = objective_value(d->cfg, s->setup, t);
            if (objective) *objective = J;
            return;
        }
        if (grad_len < 5 * d->cfg.particles.size()) fail_argument("gradient buffer too short");
        const GradientResult r = full_gradient(d->cfg, s->setup, t);
        if (objective) *objective = r.objective;
        std::memcpy(grad, r.grad.data(), r.grad.size() * sizeof(double));
    });
}

plasmo_status plasmo_compare_solvers(const plasmo_setup* s, const plasmo_design* d, double lambda, int n,
                                     plasmo_comparison* out) {
    return guard([&] {
        need(s, "setup");
        need(d, "design");
        need(out, "output");
        if (n < 8 || n % 2) fail_argument("Nystrom node count must be even and at least 8");
        const SolverComparison c = compare_solvers(d->cfg, s->setup, lambda, n);
        *out = {c.lambda, c.qe_rbm, c.qe_nystrom, c.qe_rel, c.p_rel, c.q_rel};
    });
}

void plasmo_dataset_spec_default(plasmo_dataset_spec* spec) {
    if (!spec) return;
    const DatasetSpec d;
    *spec = {d.a, d.b_min, d.b_max, d.b_count, d.theta_min, d.theta_max, d.theta_count};
}
plasmo_status plasmo_dataset_build(const plasmo_setup* s, const plasmo_dataset_spec* spec,
                                   const plasmo_design* bounds_from, plasmo_dataset** out) {
    return guard([&] {
        need(s, "setup");
        need(spec, "dataset spec");
        need(out, "output handle");
        const DatasetSpec ds{spec->a,         spec->b_min,     spec->b_max,      spec->b_count,
                             spec->theta_min, spec->theta_max, spec->theta_count};
        const DesignBounds b = bounds_from ? bounds_from->cfg.bounds : DesignBounds{};
        *out = new plasmo_dataset{build_dataset(ds, s->setup, s->grid, b), ds};
    });
}
plasmo_status plasmo_dataset_save(const plasmo_dataset* ds, const plasmo_setup* s, const char* dir,
                                  const char* header) {
    return guard([&] {
        need(ds, "dataset");
        need(s, "setup");
        need(dir, "directory");
        save_dataset(ds->data, ds->spec, s->setup, dir, header ? header : "");
    });
}
plasmo_status plasmo_dataset_load(const char* dir, plasmo_dataset** out) {
    return guard([&] {
        need(dir, "directory");
        need(out, "output handle");
        *out = new plasmo_dataset{load_dataset(dir), {}};
    });
}
void plasmo_dataset_destroy(plasmo_dataset* ds) { delete ds; }
size_t plasmo_dataset_size(const plasmo_dataset* ds) { return ds ? ds->data.entries.size() : 0; }
size_t plasmo_dataset_dropped(const plasmo_dataset* ds) { return ds ? static_cast<size_t>(ds->data.dropped) : 0; }
size_t plasmo_dataset_grid_size(const plasmo_dataset* ds) { return ds ? ds->data.grid.nodes.size() : 0; }

void plasmo_init_options_default(plasmo_init_options* opt) {
    if (!opt) return;
    const PsoOptions p;
    *opt = {p.swarm, p.inertia, p.cognitive, p.social, p.budget, p.seed, p.threads, 80.0, 80.0};
}

plasmo_status plasmo_initialize(const plasmo_dataset* ds, const double* target, size_t n,
                                const plasmo_init_options* opt, const plasmo_design* bounds_from, plasmo_design** out,
                                plasmo_init_report* report, double* fitted, double* counts) {
    return guard([&] {
        need(ds, "dataset");
        need(opt, "options");
        need(out, "output handle");
        const AbsorptanceDataset& D = ds->data;
        if (D.entries.empty()) fail_argument("dataset is empty");
        const TargetSpectrum t = target_from(D.grid, target, n);
        double kkt = 0.0;
        const CountVector relaxed = solve_relaxed(D, t, &kkt);
        const CountVector rounded = round_counts(relaxed);
        PsoOptions p{opt->swarm, opt->inertia, opt->cognitive, opt->social, opt->budget, opt->seed, opt->threads};
        const CountVector refined = refine_heuristic(D, t, rounded, p);
        const DesignBounds b = bounds_from ? bounds_from->cfg.bounds : DesignBounds{};
        DesignConfig cfg = layout(refined, D, opt->spacing1, opt->spacing2, b);
        if (report) {
            report->residual_relaxed = fit_residual(D, t, relaxed.counts);
            report->residual_rounded = fit_residual(D, t, rounded.counts);
            report->residual_refined = fit_residual(D, t, refined.counts);
            report->kkt = kkt;
            report->particles = cfg.particles.size();
        }
        if (fitted) {
            const Eigen::MatrixXd M = D.matrix();
            const Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(refined.counts.data(), refined.counts.size());
            const Eigen::VectorXd f = M * c;
            std::memcpy(fitted, f.data(), f.size() * sizeof(double));
        }
        if (counts) std::memcpy(counts, refined.counts.data(), refined.counts.size() * sizeof(double));
        *out = wrap(cfg);
    });
}

void plasmo_optimizer_options_default(plasmo_optimizer_options* opt) {
    if (!opt) return;
    const OptimizerOptions o;
    *opt = {o.step, o.iterations, o.backtracking ? 1 : 0};
}

plasmo_status plasmo_optimize(const plasmo_setup* s, const plasmo_design* initial, const double* target, size_t n,
                              const plasmo_optimizer_options* opt, plasmo_history_fn on_record, void* user,
                              plasmo_design** out) {
    return guard([&] {
        need(s, "setup");
        need(initial, "design");
        need(opt, "options");
        need(out, "output handle");
        const TargetSpectrum t = target_from(s->grid, target, n);
        OptimizerOptions o;
        o.step = opt->step;
        o.iterations = opt->iterations;
        o.backtracking = opt->backtracking != 0;
        std::function<void(const OptimizationState&)> cb;
        if (on_record)
            cb = [&](const OptimizationState& st) {
                const plasmo_design view{st.config};
                on_record(st.iteration, st.objective, st.gradient_norm, &view, user);
            };
        const OptimizationState st = run(initial->cfg, s->setup, t, o, cb);
        *out = wrap(st.config);
    });
}

} // extern "C"
