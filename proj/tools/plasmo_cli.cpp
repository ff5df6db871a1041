/*
 * tools/plasmo_cli.cpp
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

// plasmo command-line driver. Talks to the library through the C API only.

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "plasmo/plasmo.h"

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LibraryError : std::runtime_error {
    LibraryError(plasmo_status s, const std::string& w) : std::runtime_error(w), status(s) {}
    plasmo_status status;
};

void check(plasmo_status st, const std::string& context) {
    if (st == PLASMO_OK) return;
    const std::string msg = context + ": " + plasmo_last_error();
    if (st == PLASMO_ERR_ARGUMENT) throw ConfigError(msg);
    throw LibraryError(st, msg);
}

template <class T, void (*D)(T*)>
struct Deleter {
    void operator()(T* p) const { D(p); }
};
using SetupPtr = std::unique_ptr<plasmo_setup, Deleter<plasmo_setup, plasmo_setup_destroy>>;
using DesignPtr = std::unique_ptr<plasmo_design, Deleter<plasmo_design, plasmo_design_destroy>>;
using SpectrumPtr = std::unique_ptr<plasmo_spectrum, Deleter<plasmo_spectrum, plasmo_spectrum_destroy>>;
using DatasetPtr = std::unique_ptr<plasmo_dataset, Deleter<plasmo_dataset, plasmo_dataset_destroy>>;

// JSON access with field paths in error messages.
struct Node {
    const json& v;
    std::string path;

    bool has(const char* key) const { return v.is_object() && v.contains(key); }
    Node at(const char* key) const {
        if (!v.is_object() || !v.contains(key)) throw ConfigError(path + "/" + key + ": required field missing");
        return {v.at(key), path + "/" + key};
    }
    Node item(std::size_t i) const { return {v.at(i), path + "/" + std::to_string(i)}; }
    std::size_t size() const {
        if (!v.is_array()) throw ConfigError(path + ": expected an array");
        return v.size();
    }
    double num() const {
        if (!v.is_number()) throw ConfigError(path + ": expected a number");
        return v.get<double>();
    }
    int integer() const {
        if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
        return v.get<int>();
    }
    bool boolean() const {
        if (!v.is_boolean()) throw ConfigError(path + ": expected true or false");
        return v.get<bool>();
    }
    std::string str() const {
        if (!v.is_string()) throw ConfigError(path + ": expected a string");
        return v.get<std::string>();
    }
    double num_or(const char* key, double d) const { return has(key) ? at(key).num() : d; }
    int int_or(const char* key, int d) const { return has(key) ? at(key).integer() : d; }
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct Context {
    json config;
    std::string raw;
    std::string hash;
    std::uint64_t seed = 0;
    int threads = 0;
    fs::path out;

    std::string header() const {
        return std::string("# plasmo ") + plasmo_version() + "\n# config_hash fnv1a64:" + hash + "\n# seed " +
               std::to_string(seed) + "\n";
    }
    ojson provenance() const {
        return {{"version", plasmo_version()}, {"config_hash", "fnv1a64:" + hash}, {"seed", seed}};
    }
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + p.string());
    os << text;
}

json read_json(const fs::path& p) {
    std::ifstream is(p);
    if (!is) throw ConfigError("cannot open " + p.string());
    try {
        return json::parse(is);
    } catch (const json::exception& e) {
        throw ConfigError(p.string() + ": " + e.what());
    }
}

SetupPtr make_setup(const Context& ctx) {
    plasmo_setup* raw = nullptr;
    check(plasmo_setup_create(&raw), "setup");
    SetupPtr s(raw);
    const Node root{ctx.config, ""};
    if (root.has("material")) {
        const Node m = root.at("material");
        const std::string model = m.has("model") ? m.at("model").str() : "drude";
        if (model == "drude")
            check(plasmo_setup_set_drude(s.get(), m.num_or("plasma_frequency", 7.613), m.num_or("damping", 0.048)),
                  "/material");
        else if (model == "constant") {
            const Node p = m.at("permittivity");
            if (p.size() != 2) throw ConfigError(p.path + ": expected [re, im]");
            check(plasmo_setup_set_constant_permittivity(s.get(), p.item(0).num(), p.item(1).num()), "/material");
        } else
            throw ConfigError("/material/model: expected \"drude\" or \"constant\"");
    }
    if (root.has("medium")) {
        const Node m = root.at("medium");
        check(plasmo_setup_set_medium(s.get(), m.num_or("rel_permittivity", 1.0), m.num_or("rel_permeability", 1.0)),
              "/medium");
    }
    if (root.has("incident_angle"))
        check(plasmo_setup_set_incident_angle(s.get(), root.at("incident_angle").num()), "/incident_angle");
    if (root.has("arc")) {
        const Node a = root.at("arc");
        check(plasmo_setup_set_arc(s.get(), a.num_or("radius", 1500.0), a.num_or("theta_bar", 0.0),
                                   a.num_or("delta_theta", kPi / 4)),
              "/arc");
    }
    if (root.has("grid")) {
        const Node g = root.at("grid");
        check(plasmo_setup_set_grid(s.get(), g.num_or("lambda_min", 150.0), g.num_or("lambda_max", 550.0),
                                    g.int_or("count", 401)),
              "/grid");
    }
    if (root.has("discretization")) {
        const Node d = root.at("discretization");
        check(plasmo_setup_set_basis(s.get(), d.int_or("basis", 10), d.int_or("quadrature", 0)), "/discretization");
    }
    check(plasmo_setup_set_threads(s.get(), ctx.threads), "--threads");
    return s;
}

void apply_bounds(plasmo_design* d, const Node& root) {
    if (root.has("bounds")) {
        const Node b = root.at("bounds");
        check(plasmo_design_set_bounds(d, b.num_or("a_min", 8.0), b.num_or("a_max", 20.0), b.num_or("eta_min", 0.1),
                                       b.num_or("eta_max", 0.9)),
              b.path);
    }
    if (root.has("spacing")) {
        const Node s = root.at("spacing");
        if (s.size() != 2) throw ConfigError(s.path + ": expected [d1, d2]");
        check(plasmo_design_set_spacing(d, s.item(0).num(), s.item(1).num()), s.path);
    }
}

// Particle either as an object {a, b, theta, x1, x2} or as a five-element array.
void add_particle(plasmo_design* d, const Node& p) {
    double w[5];
    if (p.v.is_array()) {
        if (p.size() != 5) throw ConfigError(p.path + ": expected [a, b, theta, x1, x2]");
        for (int i = 0; i < 5; ++i) w[i] = p.item(i).num();
    } else {
        w[0] = p.at("a").num();
        w[1] = p.at("b").num();
        w[2] = p.num_or("theta", 0.0);
        w[3] = p.num_or("x1", 0.0);
        w[4] = p.num_or("x2", 0.0);
    }
    check(plasmo_design_add(d, w), p.path);
}

DesignPtr design_from(const Node& holder, const Node& bounds_root) {
    plasmo_design* raw = nullptr;
    check(plasmo_design_create(&raw), "design");
    DesignPtr d(raw);
    apply_bounds(d.get(), bounds_root);
    if (&holder.v != &bounds_root.v) apply_bounds(d.get(), holder);
    const Node ps = holder.at("particles");
    for (std::size_t i = 0; i < ps.size(); ++i) add_particle(d.get(), ps.item(i));
    return d;
}

ojson design_json(const plasmo_design* d, const Context& ctx) {
    ojson out;
    out["provenance"] = ctx.provenance();
    double b[4];
    check(plasmo_design_get_bounds(d, b), "design");
    out["bounds"] = {{"a_min", b[0]}, {"a_max", b[1]}, {"eta_min", b[2]}, {"eta_max", b[3]}};
    ojson ps = ojson::array();
    for (std::size_t i = 0; i < plasmo_design_size(d); ++i) {
        double w[5];
        check(plasmo_design_get(d, i, w), "design");
        ps.push_back({{"a", w[0]}, {"b", w[1]}, {"theta", w[2]}, {"x1", w[3]}, {"x2", w[4]}});
    }
    out["particles"] = ps;
    return out;
}

std::string dump(const ojson& j) {
    // %.17g keeps doubles round-trippable and byte-stable
    std::string s = j.dump(2, ' ', false, ojson::error_handler_t::strict);
    return s + "\n";
}

std::vector<double> grid_nodes(const plasmo_setup* s) {
    std::vector<double> g(plasmo_setup_grid_size(s));
    check(plasmo_setup_grid_nodes(s, g.data(), g.size()), "grid");
    return g;
}

std::vector<double> target_values(const Node& t, const std::vector<double>& grid) {
    const std::string kind = t.at("kind").str();
    std::vector<double> v(grid.size(), 0.0);
    if (kind == "constant") {
        const double c = t.at("value").num();
        for (double& x : v) x = c;
    } else if (kind == "bands") {
        const double c = t.at("value").num();
        const Node bands = t.at("bands");
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t k = 0; k < bands.size(); ++k) {
                const Node b = bands.item(k);
                if (b.size() != 2) throw ConfigError(b.path + ": expected [lo, hi]");
                if (grid[i] >= b.item(0).num() - 1e-9 && grid[i] <= b.item(1).num() + 1e-9) v[i] = c;
            }
    } else if (kind == "values") {
        const Node vals = t.at("values");
        if (vals.size() != grid.size()) throw ConfigError(vals.path + ": length differs from the wavelength grid");
        for (std::size_t i = 0; i < grid.size(); ++i) v[i] = vals.item(i).num();
    } else
        throw ConfigError(t.path + "/kind: expected \"constant\", \"bands\" or \"values\"");
    return v;
}

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string r;
    for (const auto& c : cells) {
        if (!r.empty()) r += ',';
        r += c;
    }
    return r + "\n";
}

std::string sanitize(std::string name) {
    for (char& c : name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
    return name;
}

std::vector<std::pair<std::string, DesignPtr>> variants(const Node& root) {
    std::vector<std::pair<std::string, DesignPtr>> out;
    const Node vs = root.at("variants");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const Node v = vs.item(i);
        const std::string name = v.has("name") ? v.at("name").str() : "variant" + std::to_string(i);
        out.emplace_back(sanitize(name), design_from(v, root));
    }
    return out;
}

// Interior local maxima of A.
std::vector<std::size_t> peaks(const std::vector<double>& A) {
    std::vector<std::size_t> p;
    for (std::size_t i = 1; i + 1 < A.size(); ++i)
        if (A[i] > A[i - 1] && A[i] >= A[i + 1]) p.push_back(i);
    return p;
}

std::vector<std::array<double, 5>> rows_of(const plasmo_spectrum* sp) {
    std::vector<std::array<double, 5>> r(plasmo_spectrum_size(sp));
    for (std::size_t i = 0; i < r.size(); ++i) check(plasmo_spectrum_row(sp, i, r[i].data()), "spectrum");
    return r;
}

SpectrumPtr spectrum(const plasmo_setup* s, const plasmo_design* d) {
    plasmo_spectrum* raw = nullptr;
    check(plasmo_spectrum_compute(s, d, &raw), "spectrum");
    return SpectrumPtr(raw);
}

void cmd_sweep(const Context& ctx) {
    const Node root{ctx.config, ""};
    SetupPtr s = make_setup(ctx);
    const bool individual = root.has("individual") ? root.at("individual").boolean() : true;
    std::string peak_csv = ctx.header() + "variant,peak,lambda_nm,A\n";
    auto vs = variants(root);
    if (vs.empty()) return;
    for (auto& [name, d] : vs) {
        check(plasmo_design_validate(d.get(), 0), name);
        SpectrumPtr sp = spectrum(s.get(), d.get());
        check(plasmo_spectrum_write_csv(sp.get(), (ctx.out / (name + ".csv")).c_str(), ctx.header().c_str()), name);
        const auto rows = rows_of(sp.get());
        std::vector<double> A;
        for (const auto& r : rows) A.push_back(r[1]);
        int k = 0;
        for (std::size_t i : peaks(A))
            peak_csv += csv_row({name, std::to_string(k++), format_double(rows[i][0]), format_double(rows[i][1])});
        const std::size_t M = plasmo_design_size(d.get());
        if (individual && M > 1) {
            std::vector<double> sum(rows.size(), 0.0);
            std::string ind = ctx.header() + "lambda_nm,A_total";
            for (std::size_t m = 0; m < M; ++m) ind += ",A_" + std::to_string(m);
            ind += ",A_sum\n";
            std::vector<std::vector<double>> parts;
            for (std::size_t m = 0; m < M; ++m) {
                plasmo_design* one = nullptr;
                check(plasmo_design_create(&one), "design");
                DesignPtr op(one);
                double w[5];
                check(plasmo_design_get(d.get(), m, w), name);
                w[3] = w[4] = 0.0;
                check(plasmo_design_add(one, w), name);
                SpectrumPtr ps = spectrum(s.get(), one);
                std::vector<double> a;
                for (const auto& r : rows_of(ps.get())) a.push_back(r[1]);
                parts.push_back(a);
            }
            for (std::size_t i = 0; i < rows.size(); ++i) {
                ind += format_double(rows[i][0]) + "," + format_double(rows[i][1]);
                double acc = 0.0;
                for (const auto& a : parts) {
                    ind += "," + format_double(a[i]);
                    acc += a[i];
                }
                ind += "," + format_double(acc) + "\n";
            }
            write_text(ctx.out / (name + "_individual.csv"), ind);
        }
    }
    write_text(ctx.out / "peaks.csv", peak_csv);
}

void cmd_validate(const Context& ctx) {
    const Node root{ctx.config, ""};
    SetupPtr s = make_setup(ctx);
    const int n = root.int_or("nystrom_nodes", 200);
    const auto grid = grid_nodes(s.get());
    std::string csv = ctx.header() + "variant,lambda_nm,Qe_rbm,Qe_nystrom,Qe_rel_err,p_rel_err,q_rel_err\n";
    for (auto& [name, d] : variants(root)) {
        check(plasmo_design_validate(d.get(), 0), name);
        for (double lam : grid) {
            plasmo_comparison c{};
            check(plasmo_compare_solvers(s.get(), d.get(), lam, n, &c), name);
            csv += csv_row({name, format_double(lam), format_double(c.qe_rbm), format_double(c.qe_nystrom),
                            format_double(c.qe_rel), format_double(c.p_rel), format_double(c.q_rel)});
        }
    }
    write_text(ctx.out / "errors.csv", csv);
}

void cmd_dataset(const Context& ctx) {
    const Node root{ctx.config, ""};
    SetupPtr s = make_setup(ctx);
    plasmo_dataset_spec spec;
    plasmo_dataset_spec_default(&spec);
    if (root.has("dataset")) {
        const Node d = root.at("dataset");
        spec.a = d.num_or("a", spec.a);
        spec.b_min = d.num_or("b_min", spec.b_min);
        spec.b_max = d.num_or("b_max", spec.b_max);
        spec.b_count = d.int_or("b_count", spec.b_count);
        spec.theta_min = d.num_or("theta_min", spec.theta_min);
        spec.theta_max = d.num_or("theta_max", spec.theta_max);
        spec.theta_count = d.int_or("theta_count", spec.theta_count);
    }
    plasmo_design* braw = nullptr;
    check(plasmo_design_create(&braw), "design");
    DesignPtr bounds(braw);
    apply_bounds(bounds.get(), root);
    plasmo_dataset* raw = nullptr;
    check(plasmo_dataset_build(s.get(), &spec, bounds.get(), &raw), "/dataset");
    DatasetPtr ds(raw);
    const fs::path dir = ctx.out / "dataset";
    check(plasmo_dataset_save(ds.get(), s.get(), dir.c_str(), ctx.header().c_str()), "dataset");
    std::cout << "dataset entries " << plasmo_dataset_size(ds.get()) << ", dropped " << plasmo_dataset_dropped(ds.get())
              << '\n';
}

void cmd_init(const Context& ctx, const fs::path& config_dir) {
    const Node root{ctx.config, ""};
    const std::string dir = root.at("dataset_dir").str();
    fs::path dpath = fs::path(dir).is_absolute() ? fs::path(dir) : config_dir / dir;
    if (!fs::exists(dpath / "manifest.json")) throw ConfigError("/dataset_dir: no dataset found at " + dpath.string());
    plasmo_dataset* raw = nullptr;
    check(plasmo_dataset_load(dpath.c_str(), &raw), "/dataset_dir");
    DatasetPtr ds(raw);
    const json manifest = read_json(dpath / "manifest.json");
    const json& g = manifest.at("grid");
    plasmo_setup* sraw = nullptr;
    check(plasmo_setup_create(&sraw), "setup");
    SetupPtr gs(sraw);
    check(plasmo_setup_set_grid(gs.get(), g.at("lambda_min").get<double>(), g.at("lambda_max").get<double>(),
                                g.at("count").get<int>()),
          "dataset grid");
    const auto grid = grid_nodes(gs.get());
    const auto target = target_values(root.at("target"), grid);
    plasmo_init_options opt;
    plasmo_init_options_default(&opt);
    opt.seed = ctx.seed;
    opt.threads = ctx.threads;
    if (root.has("pso")) {
        const Node p = root.at("pso");
        opt.swarm = p.int_or("swarm", opt.swarm);
        opt.inertia = p.num_or("inertia", opt.inertia);
        opt.cognitive = p.num_or("cognitive", opt.cognitive);
        opt.social = p.num_or("social", opt.social);
        opt.budget = p.int_or("budget", opt.budget);
    }
    if (root.has("spacing")) {
        const Node sp = root.at("spacing");
        if (sp.size() != 2) throw ConfigError(sp.path + ": expected [d1, d2]");
        opt.spacing1 = sp.item(0).num();
        opt.spacing2 = sp.item(1).num();
    }
    plasmo_design* braw = nullptr;
    check(plasmo_design_create(&braw), "design");
    DesignPtr bounds(braw);
    apply_bounds(bounds.get(), root);
    std::vector<double> fitted(grid.size()), counts(plasmo_dataset_size(ds.get()));
    plasmo_init_report rep{};
    plasmo_design* out = nullptr;
    check(plasmo_initialize(ds.get(), target.data(), target.size(), &opt, bounds.get(), &out, &rep, fitted.data(),
                            counts.data()),
          "initializer");
    DesignPtr design(out);
    write_text(ctx.out / "initial_config.json", dump(design_json(design.get(), ctx)));
    std::string f = ctx.header() + "lambda_nm,target,fitted\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        f += csv_row({format_double(grid[i]), format_double(target[i]), format_double(fitted[i])});
    write_text(ctx.out / "fitted_spectrum.csv", f);
    std::string c = ctx.header() + "entry,count\n";
    for (std::size_t l = 0; l < counts.size(); ++l)
        if (counts[l] > 0) c += csv_row({std::to_string(l), format_double(counts[l])});
    write_text(ctx.out / "counts.csv", c);
    ojson r;
    r["provenance"] = ctx.provenance();
    r["particles"] = rep.particles;
    r["residual_relaxed"] = rep.residual_relaxed;
    r["residual_rounded"] = rep.residual_rounded;
    r["residual_refined"] = rep.residual_refined;
    r["kkt"] = rep.kkt;
    write_text(ctx.out / "init_report.json", dump(r));
    std::cout << "particles " << rep.particles << '\n';
}

void cmd_optimize(const Context& ctx, const fs::path& config_dir) {
    const Node root{ctx.config, ""};
    SetupPtr s = make_setup(ctx);
    DesignPtr init;
    if (root.has("initial_config")) {
        const std::string p = root.at("initial_config").str();
        const fs::path path = fs::path(p).is_absolute() ? fs::path(p) : config_dir / p;
        if (!fs::exists(path)) throw ConfigError("/initial_config: file not found: " + path.string());
        const json j = read_json(path);
        init = design_from(Node{j, path.string()}, root);
    } else if (root.has("particles")) {
        init = design_from(root, root);
    } else
        throw ConfigError("/initial_config: required field missing");
    const auto grid = grid_nodes(s.get());
    const auto target = target_values(root.at("target"), grid);
    plasmo_optimizer_options opt;
    plasmo_optimizer_options_default(&opt);
    if (root.has("optimizer")) {
        const Node o = root.at("optimizer");
        opt.step = o.num_or("step", opt.step);
        opt.iterations = o.int_or("iterations", opt.iterations);
        if (o.has("backtracking")) opt.backtracking = o.at("backtracking").boolean() ? 1 : 0;
    }
    if (plasmo_design_size(init.get()) > 0 && plasmo_design_overlaps(init.get()) > 0)
        std::cerr << "warning: initial design has overlapping particles\n";
    std::ofstream hist(ctx.out / "history.csv", std::ios::binary);
    if (!hist) throw ConfigError("cannot write history.csv");
    hist << ctx.header() << "iteration,J,grad_inf_norm\n";
    struct Sink {
        std::ofstream* os;
        bool warned;
    } sink{&hist, false};
    auto cb = [](int it, double J, double g, const plasmo_design* d, void* user) {
        auto* k = static_cast<Sink*>(user);
        *k->os << it << ',' << format_double(J) << ',' << format_double(g) << '\n';
        k->os->flush();
        if (!k->warned && plasmo_design_overlaps(d) > 0) {
            std::cerr << "warning: iterate " << it << " has overlapping particles\n";
            k->warned = true;
        }
    };
    plasmo_design* out = nullptr;
    check(plasmo_optimize(s.get(), init.get(), target.data(), target.size(), &opt, cb, &sink, &out), "optimizer");
    DesignPtr fin(out);
    write_text(ctx.out / "final_config.json", dump(design_json(fin.get(), ctx)));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"plasmo: reduced-basis scattering and absorber design"};
    app.require_subcommand(1);
    std::string config;
    std::string out = ".";
    int threads = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    auto add_common = [&](CLI::App* c) {
        c->add_option("--config", config, "JSON configuration")->required();
        c->add_option("--out", out, "output directory");
        c->add_option("--threads", threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
        c->add_option_function<std::uint64_t>(
            "--seed", [&](const std::uint64_t& v) { seed = v, seed_given = true; }, "random seed");
    };
    CLI::App* sweep = app.add_subcommand("sweep", "absorptance spectra for a list of designs");
    CLI::App* validate = app.add_subcommand("validate", "reduced basis against Nystrom error tables");
    CLI::App* dataset = app.add_subcommand("dataset", "single-particle absorptance dataset");
    CLI::App* init = app.add_subcommand("init", "initial design from a dataset and a target");
    CLI::App* optimize = app.add_subcommand("optimize", "projected gradient descent");
    for (CLI::App* c : {sweep, validate, dataset, init, optimize}) add_common(c);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        Context ctx;
        {
            std::ifstream is(config, std::ios::binary);
            if (!is) throw ConfigError("cannot open config " + config);
            std::stringstream ss;
            ss << is.rdbuf();
            ctx.raw = ss.str();
        }
        try {
            ctx.config = json::parse(ctx.raw);
        } catch (const json::exception& e) {
            throw ConfigError(config + ": " + e.what());
        }
        if (!ctx.config.is_object()) throw ConfigError(config + ": top level must be an object");
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016" PRIx64, fnv1a(ctx.raw));
        ctx.hash = hex;
        const Node root{ctx.config, ""};
        ctx.seed = seed_given ? seed : (root.has("seed") ? static_cast<std::uint64_t>(root.at("seed").integer()) : 0);
        ctx.threads = threads;
        ctx.out = out;
        fs::create_directories(ctx.out);
        const fs::path config_dir = fs::absolute(config).parent_path();
        if (sweep->parsed()) cmd_sweep(ctx);
        if (validate->parsed()) cmd_validate(ctx);
        if (dataset->parsed()) cmd_dataset(ctx);
        if (init->parsed()) cmd_init(ctx, config_dir);
        if (optimize->parsed()) cmd_optimize(ctx, config_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const LibraryError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
