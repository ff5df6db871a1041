/*
 * include/plasmo/initializer.hpp
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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "plasmo/observables.hpp"

namespace plasmo {

// Parameter grid of the offline single-particle dataset (b-major, then theta).
struct DatasetSpec {
    double a = 10.0;
    double b_min = 1.0, b_max = 9.0;
    int b_count = 80;
    double theta_min = 0.0, theta_max = kPi / 2;
    int theta_count = 40;
};

struct DatasetEntry {
    EllipseParams params;
    std::vector<double> A;
};

struct AbsorptanceDataset {
    WavelengthGrid grid;
    std::vector<DatasetEntry> entries;
    int dropped = 0;
    Eigen::MatrixXd matrix() const; // n_lambda x L
};

AbsorptanceDataset build_dataset(const DatasetSpec& spec, const Setup& s, const WavelengthGrid& grid,
                                 const DesignBounds& bounds);
// Directory with manifest.json, entries.csv and spectra.csv.
void save_dataset(const AbsorptanceDataset& d, const DatasetSpec& spec, const Setup& s, const std::string& dir,
                  const std::string& header = "");
AbsorptanceDataset load_dataset(const std::string& dir);

enum class CountStage { Relaxed, Rounded, Refined };
struct CountVector {
    std::vector<double> counts;
    CountStage stage = CountStage::Relaxed;
};

// Active-set non-negative least squares min ||A x - b||, x >= 0.
struct NnlsResult {
    Eigen::VectorXd x;
    double kkt = 0.0; // max KKT violation scaled by ||A^T b||
    int iterations = 0;
};
NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

// || D c - A_tar || in L2(Lambda) with trapezoid weights.
double fit_residual(const AbsorptanceDataset& d, const TargetSpectrum& target, const std::vector<double>& counts);

CountVector solve_relaxed(const AbsorptanceDataset& d, const TargetSpectrum& target, double* kkt = nullptr);
CountVector round_counts(const CountVector& c);

struct PsoOptions {
    int swarm = 64;
    double inertia = 0.7;
    double cognitive = 1.5;
    double social = 1.5;
    int budget = 500;
    std::uint64_t seed = 0;
    int threads = 1;
};
CountVector refine_heuristic(const AbsorptanceDataset& d, const TargetSpectrum& target, const CountVector& start,
                             const PsoOptions& opt);

DesignConfig layout(const CountVector& c, const AbsorptanceDataset& d, double spacing1 = 80.0,
                    double spacing2 = 80.0, const DesignBounds& bounds = {});

} // namespace plasmo
