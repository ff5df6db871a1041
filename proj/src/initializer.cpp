/*
 * src/initializer.cpp
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

#include "plasmo/initializer.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "plasmo/parallel.hpp"

namespace plasmo {

Eigen::MatrixXd AbsorptanceDataset::matrix() const {
    Eigen::MatrixXd D(grid.nodes.size(), entries.size());
    for (std::size_t l = 0; l < entries.size(); ++l)
        for (std::size_t i = 0; i < grid.nodes.size(); ++i) D(i, l) = entries[l].A[i];
    return D;
}

static std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

AbsorptanceDataset build_dataset(const DatasetSpec& spec, const Setup& s, const WavelengthGrid& grid,
                                 const DesignBounds& bounds) {
    if (spec.b_count < 1 || spec.theta_count < 1) fail_argument("dataset grids need at least one point");
    if (spec.a < bounds.a_min || spec.a > bounds.a_max) fail_argument("dataset semi-major axis outside bounds");
    if (spec.theta_min < 0.0 || spec.theta_max > kPi / 2 + 1e-12) fail_argument("dataset angles must lie in [0, pi/2]");
    validate(s);
    std::vector<EllipseParams> params;
    for (double b : linspace(spec.b_min, spec.b_max, spec.b_count)) {
        const double eta = b / spec.a;
        if (!(spec.a > b) || eta < bounds.eta_min - 1e-12 || eta > bounds.eta_max + 1e-12) continue;
        for (double th : linspace(spec.theta_min, spec.theta_max, spec.theta_count))
            params.push_back({spec.a, b, th, 0.0, 0.0});
    }
    const int L = static_cast<int>(params.size());
    std::vector<std::vector<double>> spectra(L);
    std::vector<std::string> errors(L);
    Setup one = s;
    one.threads = 1;
    parallel_for(L, resolve_threads(s.threads), [&](int l) {
        try {
            DesignConfig cfg;
            cfg.particles = {params[l]};
            spectra[l] = compute_spectrum(cfg, one, grid).absorptances();
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Numerical) throw;
            errors[l] = e.what();
        }
    });
    AbsorptanceDataset d;
    d.grid = grid;
    for (int l = 0; l < L; ++l) {
        if (!errors[l].empty()) {
            std::cerr << "warning: dropped dataset entry b = " << params[l].b << ", theta = " << params[l].theta
                      << ": " << errors[l] << '\n';
            ++d.dropped;
            continue;
        }
        d.entries.push_back({params[l], std::move(spectra[l])});
    }
    return d;
}

void save_dataset(const AbsorptanceDataset& d, const DatasetSpec& spec, const Setup& s, const std::string& dir,
                  const std::string& header) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    nlohmann::ordered_json m;
    m["format"] = "plasmo-dataset-1";
    m["ordering"] = "b-major, then theta";
    m["grid"] = {{"lambda_min", d.grid.lambda_min}, {"lambda_max", d.grid.lambda_max}, {"count", d.grid.count}};
    m["parameters"] = {{"a", spec.a},
                       {"b_min", spec.b_min},
                       {"b_max", spec.b_max},
                       {"b_count", spec.b_count},
                       {"theta_min", spec.theta_min},
                       {"theta_max", spec.theta_max},
                       {"theta_count", spec.theta_count}};
    m["material"] = {{"plasma_frequency_ev", s.material.drude.plasma_frequency},
                     {"damping_ev", s.material.drude.damping},
                     {"model", s.material.model == ParticleMaterial::Model::Drude ? "drude" : "constant"}};
    m["medium"] = {{"rel_permittivity", s.medium.rel_permittivity}, {"rel_permeability", s.medium.rel_permeability}};
    m["arc"] = {{"radius", s.arc.radius},
                {"theta_bar", s.arc.theta_bar},
                {"delta_theta", s.arc.delta_theta},
                {"incident_angle", s.incident_angle}};
    m["entries"] = d.entries.size();
    m["dropped"] = d.dropped;
    {
        std::ofstream os(dir + "/manifest.json");
        if (!os) fail_argument("cannot write dataset manifest in " + dir);
        os << m.dump(2) << '\n';
    }
    std::ofstream e(dir + "/entries.csv"), sp(dir + "/spectra.csv");
    if (!e || !sp) fail_argument("cannot write dataset files in " + dir);
    e << header << "entry,a,b,theta\n";
    sp << header << "entry,lambda_nm,A\n";
    for (std::size_t l = 0; l < d.entries.size(); ++l) {
        const auto& p = d.entries[l].params;
        e << l << ',' << format_double(p.a) << ',' << format_double(p.b) << ',' << format_double(p.theta) << '\n';
        for (std::size_t i = 0; i < d.grid.nodes.size(); ++i)
            sp << l << ',' << format_double(d.grid.nodes[i]) << ',' << format_double(d.entries[l].A[i]) << '\n';
    }
}

namespace {

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail_argument("cannot read " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        rows.push_back(std::move(f));
    }
    return rows;
}

} // namespace

AbsorptanceDataset load_dataset(const std::string& dir) {
    std::ifstream is(dir + "/manifest.json");
    if (!is) fail_argument("dataset manifest not found in " + dir);
    nlohmann::json m;
    try {
        is >> m;
    } catch (const std::exception& e) {
        fail_argument(std::string("malformed dataset manifest: ") + e.what());
    }
    AbsorptanceDataset d;
    try {
        d.grid = make_grid(m.at("grid").at("lambda_min"), m.at("grid").at("lambda_max"), m.at("grid").at("count"));
        d.dropped = m.value("dropped", 0);
    } catch (const nlohmann::json::exception& e) {
        fail_argument(std::string("malformed dataset manifest: ") + e.what());
    }
    const auto entries = read_csv(dir + "/entries.csv");
    const auto spectra = read_csv(dir + "/spectra.csv");
    const std::size_t nl = d.grid.nodes.size();
    d.entries.resize(entries.size());
    for (std::size_t l = 0; l < entries.size(); ++l) {
        if (entries[l].size() != 4) fail_argument("malformed entries.csv row");
        d.entries[l].params = {std::stod(entries[l][1]), std::stod(entries[l][2]), std::stod(entries[l][3]), 0.0, 0.0};
        d.entries[l].A.assign(nl, std::nan(""));
    }
    if (spectra.size() != entries.size() * nl) fail_argument("spectra.csv does not match the manifest grid");
    for (const auto& r : spectra) {
        if (r.size() != 3) fail_argument("malformed spectra.csv row");
        const std::size_t l = std::stoul(r[0]);
        const double lam = std::stod(r[1]);
        if (l >= d.entries.size()) fail_argument("spectra.csv entry index out of range");
        std::size_t i = 0;
        while (i < nl && std::abs(d.grid.nodes[i] - lam) > 1e-9 * lam) ++i;
        if (i == nl) fail_argument("spectra.csv wavelength not on the grid");
        d.entries[l].A[i] = std::stod(r[2]);
    }
    return d;
}

NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(A.cols());
    NnlsResult res;
    res.x = Eigen::VectorXd::Zero(n);
    const double scale = std::max((A.transpose() * b).lpNorm<Eigen::Infinity>(), 1e-300);
    const double tol = 1e-13 * scale;
    std::vector<char> passive(n, 0);
    Eigen::VectorXd w = A.transpose() * b;
    const int max_outer = 3 * n + 10;
    auto solve_passive = [&](Eigen::VectorXd& z) {
        std::vector<int> idx;
        for (int j = 0; j < n; ++j)
            if (passive[j]) idx.push_back(j);
        Eigen::MatrixXd Ap(A.rows(), idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c) Ap.col(c) = A.col(idx[c]);
        const Eigen::VectorXd zp = Ap.colPivHouseholderQr().solve(b);
        z = Eigen::VectorXd::Zero(n);
        for (std::size_t c = 0; c < idx.size(); ++c) z(idx[c]) = zp(c);
    };
    for (int outer = 0; outer < max_outer; ++outer) {
        int t = -1;
        double best = tol;
        for (int j = 0; j < n; ++j)
            if (!passive[j] && w(j) > best) {
                best = w(j);
                t = j;
            }
        if (t < 0) break;
        passive[t] = 1;
        ++res.iterations;
        Eigen::VectorXd z;
        for (int inner = 0; inner < 3 * n + 10; ++inner) {
            solve_passive(z);
            bool ok = true;
            for (int j = 0; j < n; ++j)
                if (passive[j] && z(j) <= 0.0) ok = false;
            if (ok) break;
            double alpha = 1.0;
            for (int j = 0; j < n; ++j)
                if (passive[j] && z(j) <= 0.0) alpha = std::min(alpha, res.x(j) / (res.x(j) - z(j)));
            res.x += alpha * (z - res.x);
            for (int j = 0; j < n; ++j)
                if (passive[j] && res.x(j) <= 1e-15 * std::max(1.0, res.x.lpNorm<Eigen::Infinity>())) {
                    passive[j] = 0;
                    res.x(j) = 0.0;
                }
        }
        res.x = z;
        for (int j = 0; j < n; ++j)
            if (!passive[j]) res.x(j) = 0.0;
        w = A.transpose() * (b - A * res.x);
    }
    double kkt = 0.0;
    for (int j = 0; j < n; ++j) kkt = std::max(kkt, res.x(j) > 0.0 ? std::abs(w(j)) : std::max(w(j), 0.0));
    res.kkt = kkt / scale;
    return res;
}

namespace {

struct WeightedSystem {
    Eigen::MatrixXd D; // rows scaled by sqrt(w)
    Eigen::VectorXd t;
};

WeightedSystem weighted(const AbsorptanceDataset& d, const TargetSpectrum& target) {
    if (target.values.size() != d.grid.nodes.size()) fail_argument("target and dataset grids differ");
    for (std::size_t i = 0; i < d.grid.nodes.size(); ++i)
        if (std::abs(target.grid.nodes[i] - d.grid.nodes[i]) > 1e-9 * d.grid.nodes[i])
            fail_argument("target and dataset grids differ");
    const std::vector<double> w = trapezoid_weights(d.grid);
    WeightedSystem ws{d.matrix(), Eigen::VectorXd(w.size())};
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double sw = std::sqrt(w[i]);
        ws.D.row(i) *= sw;
        ws.t(i) = sw * target.values[i];
    }
    return ws;
}

double residual_of(const WeightedSystem& ws, const std::vector<double>& c) {
    Eigen::VectorXd r = -ws.t;
    for (std::size_t l = 0; l < c.size(); ++l)
        if (c[l] != 0.0) r += c[l] * ws.D.col(l);
    return r.norm();
}

} // namespace

double fit_residual(const AbsorptanceDataset& d, const TargetSpectrum& target, const std::vector<double>& counts) {
    if (counts.size() != d.entries.size()) fail_argument("count vector length differs from the dataset size");
    return residual_of(weighted(d, target), counts);
}

CountVector solve_relaxed(const AbsorptanceDataset& d, const TargetSpectrum& target, double* kkt) {
    const WeightedSystem ws = weighted(d, target);
    const NnlsResult r = nnls(ws.D, ws.t);
    if (kkt) *kkt = r.kkt;
    return {std::vector<double>(r.x.data(), r.x.data() + r.x.size()), CountStage::Relaxed};
}

CountVector round_counts(const CountVector& c) {
    CountVector out{c.counts, CountStage::Rounded};
    for (double& v : out.counts) {
        if (v < 0.0) fail_argument("counts must be non-negative");
        v = std::floor(v + 0.5);
    }
    return out;
}

CountVector refine_heuristic(const AbsorptanceDataset& d, const TargetSpectrum& target, const CountVector& start,
                             const PsoOptions& opt) {
    if (start.stage == CountStage::Relaxed) fail_argument("refinement starts from rounded counts");
    if (start.counts.size() != d.entries.size()) fail_argument("count vector length differs from the dataset size");
    if (opt.swarm < 1 || opt.budget < 0) fail_argument("invalid swarm settings");
    if (opt.budget == 0) return {start.counts, CountStage::Refined};
    const WeightedSystem ws = weighted(d, target);
    const int L = static_cast<int>(start.counts.size()), S = opt.swarm;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto rounded = [](const std::vector<double>& x) {
        std::vector<double> r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::floor(std::max(x[i], 0.0) + 0.5);
        return r;
    };
    std::vector<std::vector<double>> x(S, start.counts), v(S, std::vector<double>(L, 0.0));
    for (int i = 1; i < S; ++i)
        for (int l = 0; l < L; ++l) x[i][l] = std::max(0.0, start.counts[l] + 2.0 * unit(rng) - 1.0);
    for (int i = 0; i < S; ++i)
        for (int l = 0; l < L; ++l) v[i][l] = unit(rng) - 0.5;
    std::vector<double> fit(S);
    const int threads = resolve_threads(opt.threads);
    auto evaluate = [&]() {
        parallel_for(S, threads, [&](int i) { fit[i] = residual_of(ws, rounded(x[i])); });
    };
    evaluate();
    std::vector<std::vector<double>> pbest = x;
    std::vector<double> pfit = fit;
    int g = 0;
    for (int i = 1; i < S; ++i)
        if (pfit[i] < pfit[g]) g = i;
    std::vector<double> gbest = pbest[g];
    double gfit = pfit[g];
    for (int it = 0; it < opt.budget && gfit > 0.0; ++it) {
        for (int i = 0; i < S; ++i)
            for (int l = 0; l < L; ++l) {
                const double r1 = unit(rng), r2 = unit(rng);
                v[i][l] = opt.inertia * v[i][l] + opt.cognitive * r1 * (pbest[i][l] - x[i][l]) +
                          opt.social * r2 * (gbest[l] - x[i][l]);
                x[i][l] = std::max(0.0, x[i][l] + v[i][l]);
            }
        evaluate();
        for (int i = 0; i < S; ++i) {
            if (fit[i] < pfit[i]) {
                pfit[i] = fit[i];
                pbest[i] = x[i];
            }
            if (pfit[i] < gfit) {
                gfit = pfit[i];
                gbest = pbest[i];
            }
        }
    }
    return {rounded(gbest), CountStage::Refined};
}

DesignConfig layout(const CountVector& c, const AbsorptanceDataset& d, double spacing1, double spacing2,
                    const DesignBounds& bounds) {
    if (c.stage == CountStage::Relaxed) fail_argument("layout needs integer counts");
    if (c.counts.size() != d.entries.size()) fail_argument("count vector length differs from the dataset size");
    long total = 0;
    for (double v : c.counts) {
        if (v < 0.0 || v != std::floor(v)) fail_argument("counts must be non-negative integers");
        total += static_cast<long>(v);
    }
    if (total == 0) fail_argument("layout needs at least one particle");
    const int M = static_cast<int>(total);
    const int nx1 = static_cast<int>(std::ceil(std::sqrt(double(M))));
    const int nx2 = (M + nx1 - 1) / nx1;
    DesignConfig cfg;
    cfg.bounds = bounds;
    cfg.spacing1 = spacing1;
    cfg.spacing2 = spacing2;
    int m = 0;
    for (std::size_t l = 0; l < c.counts.size(); ++l)
        for (int r = 0; r < static_cast<int>(c.counts[l]); ++r, ++m) {
            const int i = m % nx1 + 1, j = m / nx1 + 1;
            EllipseParams w = d.entries[l].params;
            w.x1 = (i - 0.5 * (1 + nx1)) * spacing1;
            w.x2 = (j - 0.5 * (1 + nx2)) * spacing2;
            cfg.particles.push_back(w);
        }
    return cfg;
}

} // namespace plasmo
