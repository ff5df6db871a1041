/*
 * src/spectral.cpp
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

#include "plasmo/spectral.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace plasmo {

SpectralBasis::SpectralBasis(const EllipseParams& w, int N, int n_series, int n_kappa)
    : w_(w), N_(N), ell_(elliptic_data(w)) {
    if (N < 4 || N % 2 != 0) fail_argument("basis size must be even and at least 4");
    const int need = N / 2 + static_cast<int>(std::ceil(40.0 / ell_.rho));
    n_series_ = n_series > 0 ? n_series : std::max(64, need);
    const int mmax = n_series_ + N / 2;
    if (n_kappa > 0) {
        n_kappa_ = n_kappa;
    } else {
        const int want = mmax + static_cast<int>(std::ceil(40.0 / ell_.rho));
        n_kappa_ = std::max(256, 64 * ((want + 63) / 64));
    }
    weight_cos_.assign(mmax + 1, 0.0);
    const double sh = std::sinh(ell_.rho);
    const double h = 2.0 * kPi / n_kappa_;
    for (int q = 0; q < n_kappa_; ++q) {
        const double s = h * q;
        const double sn = std::sin(s);
        const double wq = h / (ell_.c * kPi * (sh * sh + sn * sn));
        const std::complex<double> rot = std::polar(1.0, s);
        std::complex<double> e = 1.0;
        for (int m = 0; m <= mmax; ++m) {
            weight_cos_[m] += wq * e.real();
            e *= rot;
        }
    }
}

BasisIndex SpectralBasis::index(int i) const {
    if (i < 0 || i >= N_) fail_argument("basis index " + std::to_string(i) + " out of range");
    const int nsin = N_ / 2 - 1;
    if (i < nsin) return {true, i + 1};
    return {false, i - nsin};
}

double SpectralBasis::alpha(int order) const { return 0.5 * std::exp(-2.0 * order * ell_.rho); }

double SpectralBasis::trig(int i, double t) const {
    const BasisIndex b = index(i);
    return b.is_sin ? std::sin(b.order * t) : std::cos(b.order * t);
}

double SpectralBasis::eval_forward(int i, double t) const { return trig(i, t) / xi(t); }
double SpectralBasis::eval_adjoint_q(int i, double t) const { return trig(i, t) * xi(t); }

SingularPair SpectralBasis::singular_forward(int i, double t) const {
    const BasisIndex b = index(i);
    const double psi = eval_forward(i, t);
    if (!b.is_sin && b.order == 0) return {ell_.rho + std::log(0.5 * ell_.c), 0.5 * psi};
    const double al = alpha(b.order);
    const int n = b.order;
    if (b.is_sin) return {-(0.5 - al) * std::sin(n * t) / n, -al * psi};
    return {-(0.5 + al) * std::cos(n * t) / n, al * psi};
}

SingularPair SpectralBasis::singular_adjoint(int i, double t) const {
    const BasisIndex b = index(i);
    const double x = xi(t);
    const double q = trig(i, t) * x;
    if (!b.is_sin && b.order == 0) return {(ell_.rho + std::log(0.5 * ell_.c)) * x, 0.5 * q};
    const double al = alpha(b.order);
    const int n = b.order;
    if (b.is_sin) return {-(0.5 - al) * q / n, -al * q};
    return {-(0.5 + al) * q / n, al * q};
}

double SpectralBasis::fourier_weight(int m) const {
    m = std::abs(m);
    if (m >= static_cast<int>(weight_cos_.size())) return 0.0;
    return weight_cos_[m];
}

Kappa SpectralBasis::kappa(int n, int i) const {
    if (n < 0 || i < 0) fail_argument("kappa orders must be non-negative");
    const double fm = fourier_weight(n - i), fp = fourier_weight(n + i);
    // sin x cos products integrate an odd function against an even weight
    return {0.5 * (fm - fp), 0.0, 0.0, 0.5 * (fm + fp)};
}

SingularPair SpectralBasis::forward_over_xi2(int i, double t) const {
    const BasisIndex b = index(i);
    const double rho = ell_.rho, c = ell_.c;
    const double x = xi(t);
    double s_sum = 0.0, k_sum = 0.0;
    if (!b.is_sin) {
        const double k0 = kappa(0, b.order).cc;
        s_sum = 0.5 * (rho + std::log(0.5 * c)) * k0;
        k_sum = 0.5 * k0;
    }
    for (int n = 1; n <= n_series_; ++n) {
        const Kappa kp = kappa(n, b.order);
        const double e2 = std::exp(-2.0 * n * rho);
        if (b.is_sin) {
            const double term = kp.ss * std::sin(n * t) * 0.5 * (1.0 - e2);
            s_sum -= term / n;
            k_sum += term;
        } else {
            const double term = kp.cc * std::cos(n * t) * 0.5 * (1.0 + e2);
            s_sum -= term / n;
            k_sum += term;
        }
    }
    const double f = trig(i, t) / (x * x * x);
    return {s_sum / c, k_sum / (c * x) - 0.5 * f};
}

DerivativePair SpectralBasis::derivative_actions(int i, double t) const {
    const BasisIndex b = index(i);
    const ShapeJacobians J = shape_jacobians(w_, t);
    const double x = xi(t);
    const double ab = w_.a * w_.b;
    const double c = ell_.c;
    const SingularPair base = singular_forward(i, t);
    const SingularPair over = forward_over_xi2(i, t);
    const double psi = eval_forward(i, t);
    const int n = b.order;
    const double al = alpha(n);
    DerivativePair out{};
    for (int k = 0; k < kSlots; ++k) {
        const double dcc = J.dc[k] / c, dr = J.drho[k];
        if (dcc == 0.0 && dr == 0.0) continue;
        const double dal = -2.0 * n * al * dr;
        double ds_full, dk_full;
        if (!b.is_sin && n == 0) {
            ds_full = dr + dcc;
            dk_full = -(dcc + ab / (x * x) * dr) * 0.5 * psi;
        } else if (b.is_sin) {
            ds_full = dal * std::sin(n * t) / n;
            dk_full = (dcc + (2.0 * n + ab / (x * x)) * dr) * al * psi;
        } else {
            ds_full = -dal * std::cos(n * t) / n;
            dk_full = -(dcc + (2.0 * n + ab / (x * x)) * dr) * al * psi;
        }
        // subtract the action on the density derivative -(dc/c) psi - ab drho psi/Xi^2
        out.ds[k] = ds_full + dcc * base.s + ab * dr * over.s;
        out.dk[k] = dk_full + dcc * base.k + ab * dr * over.k;
    }
    return out;
}

} // namespace plasmo
