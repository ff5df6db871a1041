/*
 * include/plasmo/spectral.hpp
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

#include <vector>

#include "plasmo/geometry.hpp"

namespace plasmo {

struct BasisIndex {
    bool is_sin;
    int order;
};

struct SingularPair {
    double s; // single-layer action
    double k; // K* (forward) or K (adjoint) action
};

struct DerivativePair {
    Slots ds;
    Slots dk;
};

struct Kappa {
    double ss, cs, sc, cc;
};

// Eigen-system of the Laplace NP operator on one ellipse. Index i runs over [0, N):
// sin orders 1..N/2-1 first, then cos orders 0..N/2.
class SpectralBasis {
public:
    // n_series, n_kappa <= 0 select sizes from rho.
    SpectralBasis(const EllipseParams& w, int N, int n_series = 0, int n_kappa = 0);

    int size() const { return N_; }
    BasisIndex index(int i) const;
    const EllipticData& elliptic() const { return ell_; }
    double alpha(int order) const;
    int series_terms() const { return n_series_; }
    int kappa_nodes() const { return n_kappa_; }

    double xi(double t) const { return metric_xi(ell_, t); }
    double trig(int i, double t) const;
    // psi_i(t) = trig/Xi
    double eval_forward(int i, double t) const;
    // adjoint q-side basis trig * Xi
    double eval_adjoint_q(int i, double t) const;

    SingularPair singular_forward(int i, double t) const;
    SingularPair singular_adjoint(int i, double t) const;
    // Laplace operators applied to psi_i / Xi^2.
    SingularPair forward_over_xi2(int i, double t) const;
    // Operator derivatives with the density held fixed.
    DerivativePair derivative_actions(int i, double t) const;
    Kappa kappa(int n, int i) const;

private:
    double fourier_weight(int m) const;

    EllipseParams w_;
    int N_;
    EllipticData ell_;
    int n_series_;
    int n_kappa_;
    std::vector<double> weight_cos_; // integral of cos(m s) / (c pi (sinh^2 rho + sin^2 s))
};

} // namespace plasmo
