/*
 * include/plasmo/plasmo.h
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

#ifndef PLASMO_H
#define PLASMO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PLASMO_API __declspec(dllexport)
#else
#define PLASMO_API __attribute__((visibility("default")))
#endif

typedef enum {
    PLASMO_OK = 0,
    PLASMO_ERR_ARGUMENT = 1,
    PLASMO_ERR_NUMERICAL = 2,
    PLASMO_ERR_INTERNAL = 3
} plasmo_status;

typedef struct plasmo_setup plasmo_setup;
typedef struct plasmo_design plasmo_design;
typedef struct plasmo_spectrum plasmo_spectrum;
typedef struct plasmo_dataset plasmo_dataset;

/* Message of the last failure on the calling thread. */
PLASMO_API const char* plasmo_last_error(void);
PLASMO_API const char* plasmo_version(void);

/* Physics, wavelength grid and discretization. Lengths in nm, energies in eV. */
PLASMO_API plasmo_status plasmo_setup_create(plasmo_setup** out);
PLASMO_API void plasmo_setup_destroy(plasmo_setup* s);
PLASMO_API plasmo_status plasmo_setup_set_drude(plasmo_setup* s, double plasma_frequency, double damping);
PLASMO_API plasmo_status plasmo_setup_set_constant_permittivity(plasmo_setup* s, double re, double im);
PLASMO_API plasmo_status plasmo_setup_set_medium(plasmo_setup* s, double rel_permittivity, double rel_permeability);
PLASMO_API plasmo_status plasmo_setup_set_arc(plasmo_setup* s, double radius, double theta_bar, double delta_theta);
PLASMO_API plasmo_status plasmo_setup_set_incident_angle(plasmo_setup* s, double theta0);
PLASMO_API plasmo_status plasmo_setup_set_grid(plasmo_setup* s, double lambda_min, double lambda_max, int count);
PLASMO_API plasmo_status plasmo_setup_set_basis(plasmo_setup* s, int basis, int quadrature);
PLASMO_API plasmo_status plasmo_setup_set_threads(plasmo_setup* s, int threads);
PLASMO_API size_t plasmo_setup_grid_size(const plasmo_setup* s);
PLASMO_API plasmo_status plasmo_setup_grid_nodes(const plasmo_setup* s, double* out, size_t len);

/* Ordered particle list, each particle (a, b, theta, x1, x2). */
PLASMO_API plasmo_status plasmo_design_create(plasmo_design** out);
PLASMO_API plasmo_status plasmo_design_clone(const plasmo_design* d, plasmo_design** out);
PLASMO_API void plasmo_design_destroy(plasmo_design* d);
PLASMO_API plasmo_status plasmo_design_add(plasmo_design* d, const double params[5]);
PLASMO_API size_t plasmo_design_size(const plasmo_design* d);
PLASMO_API plasmo_status plasmo_design_get(const plasmo_design* d, size_t index, double params[5]);
PLASMO_API plasmo_status plasmo_design_set_bounds(plasmo_design* d, double a_min, double a_max, double eta_min,
                                                  double eta_max);
PLASMO_API plasmo_status plasmo_design_get_bounds(const plasmo_design* d, double bounds[4]);
PLASMO_API plasmo_status plasmo_design_set_spacing(plasmo_design* d, double spacing1, double spacing2);
PLASMO_API plasmo_status plasmo_design_validate(const plasmo_design* d, int check_bounds);
/* Number of pairs with intersecting circumscribed circles. */
PLASMO_API size_t plasmo_design_overlaps(const plasmo_design* d);

/* Spectrum rows: lambda, A, Qe, Qs, Qa. */
PLASMO_API plasmo_status plasmo_spectrum_compute(const plasmo_setup* s, const plasmo_design* d, plasmo_spectrum** out);
PLASMO_API void plasmo_spectrum_destroy(plasmo_spectrum* sp);
PLASMO_API size_t plasmo_spectrum_size(const plasmo_spectrum* sp);
PLASMO_API plasmo_status plasmo_spectrum_row(const plasmo_spectrum* sp, size_t i, double row[5]);
PLASMO_API plasmo_status plasmo_spectrum_write_csv(const plasmo_spectrum* sp, const char* path, const char* header);

/* Objective against target values on the setup grid, and its gradient (5 per particle). grad may be NULL. */
PLASMO_API plasmo_status plasmo_objective_gradient(const plasmo_setup* s, const plasmo_design* d,
                                                   const double* target, size_t n_target, double* objective,
                                                   double* grad, size_t grad_len);

typedef struct {
    double lambda;
    double qe_rbm, qe_nystrom, qe_rel;
    double p_rel, q_rel;
} plasmo_comparison;
PLASMO_API plasmo_status plasmo_compare_solvers(const plasmo_setup* s, const plasmo_design* d, double lambda,
                                                int nystrom_nodes, plasmo_comparison* out);

/* Single-particle dataset on a (b, theta) grid at fixed a, b-major. */
typedef struct {
    double a;
    double b_min, b_max;
    int b_count;
    double theta_min, theta_max;
    int theta_count;
} plasmo_dataset_spec;
PLASMO_API void plasmo_dataset_spec_default(plasmo_dataset_spec* spec);
PLASMO_API plasmo_status plasmo_dataset_build(const plasmo_setup* s, const plasmo_dataset_spec* spec,
                                              const plasmo_design* bounds_from, plasmo_dataset** out);
PLASMO_API plasmo_status plasmo_dataset_save(const plasmo_dataset* ds, const plasmo_setup* s, const char* dir,
                                             const char* header);
PLASMO_API plasmo_status plasmo_dataset_load(const char* dir, plasmo_dataset** out);
PLASMO_API void plasmo_dataset_destroy(plasmo_dataset* ds);
PLASMO_API size_t plasmo_dataset_size(const plasmo_dataset* ds);
PLASMO_API size_t plasmo_dataset_dropped(const plasmo_dataset* ds);
PLASMO_API size_t plasmo_dataset_grid_size(const plasmo_dataset* ds);

typedef struct {
    int swarm;
    double inertia, cognitive, social;
    int budget;
    uint64_t seed;
    int threads;
    double spacing1, spacing2;
} plasmo_init_options;
typedef struct {
    double residual_relaxed, residual_rounded, residual_refined;
    double kkt;
    size_t particles;
} plasmo_init_report;
PLASMO_API void plasmo_init_options_default(plasmo_init_options* opt);
/* fitted (may be NULL) receives D c* on the dataset grid. counts (may be NULL) receives c*. */
PLASMO_API plasmo_status plasmo_initialize(const plasmo_dataset* ds, const double* target, size_t n_target,
                                           const plasmo_init_options* opt, const plasmo_design* bounds_from,
                                           plasmo_design** out, plasmo_init_report* report, double* fitted,
                                           double* counts);

typedef struct {
    double step;
    int iterations;
    int backtracking;
} plasmo_optimizer_options;
typedef void (*plasmo_history_fn)(int iteration, double objective, double grad_inf_norm, const plasmo_design* iterate,
                                  void* user);
PLASMO_API void plasmo_optimizer_options_default(plasmo_optimizer_options* opt);
PLASMO_API plasmo_status plasmo_optimize(const plasmo_setup* s, const plasmo_design* initial, const double* target,
                                         size_t n_target, const plasmo_optimizer_options* opt,
                                         plasmo_history_fn on_record, void* user, plasmo_design** out);

#ifdef __cplusplus
}
#endif

#endif
