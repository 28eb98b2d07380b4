// Copyright 2026 The speckleq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "speckleq/special_functions.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "speckleq/errors.h"

namespace speckleq {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// Taylor coefficients of 1/Gamma(z) = sum_k c[k] z^(k+1) (Abramowitz & Stegun 6.1.34).
constexpr double kInvGamma[] = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, as mantissas times exp(log_scale).
struct KPair {
    double k_mu;
    double k_mu1;
    double log_scale;
};

KPair temme_series(double mu, double x) {
    const double x2 = 0.5 * x;
    const double pimu = std::numbers::pi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.inv_gamma_plus;
    double q = 0.5 / (e * g.inv_gamma_minus);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    const double mu2 = mu * mu;
    for (int i = 1; i <= kMaxIter; i++) {
        const double di = i;
        ff = (di * ff + p + q) / (di * di - mu2);
        c *= d / di;
        p /= di - mu;
        q /= di + mu;
        const double del = c * ff;
        sum += del;
        sum1 += c * (p - di * ff);
        if (std::abs(del) < std::abs(sum) * kEps) {
            break;
        }
    }
    return {sum, sum1 * 2.0 / x, 0.0};
}

// Steed's method on Temme's continued fraction; returns K e^x with log_scale = -x.
KPair steed_continued_fraction(double mu, double x) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu * mu;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= kMaxIter; i++) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) {
            break;
        }
    }
    h = a1 * h;
    const double k_mu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    const double k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    return {k_mu, k_mu1, -x};
}

KPair bessel_k_scaled(double nu, double z) {
    if (!(z > 0)) {
        throw DomainError("bessel_k: argument must be positive, got " + std::to_string(z));
    }
    if (!(nu >= 0) || !std::isfinite(nu)) {
        throw DomainError("bessel_k: order must be finite and non-negative, got " + std::to_string(nu));
    }
    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;
    KPair k = z < 2.0 ? temme_series(mu, z) : steed_continued_fraction(mu, z);
    constexpr double kBig = 1e250;
    const double two_over_z = 2.0 / z;
    for (int i = 1; i <= nl; i++) {
        const double next = (mu + i) * two_over_z * k.k_mu1 + k.k_mu;
        k.k_mu = k.k_mu1;
        k.k_mu1 = next;
        if (std::abs(k.k_mu1) > kBig) {
            k.k_mu /= kBig;
            k.k_mu1 /= kBig;
            k.log_scale += std::log(kBig);
        }
    }
    return k;
}

}  // namespace

TemmeGammas temme_gammas(double mu) {
    // gam2 collects the odd-indexed Taylor terms, gam1 the even ones (sign flipped).
    double gam1 = 0;
    double gam2 = 0;
    const double mu2 = mu * mu;
    double pw = 1.0;
    constexpr int n = static_cast<int>(std::size(kInvGamma));
    for (int k = 0; k + 1 < n; k += 2) {
        gam2 += kInvGamma[k] * pw;
        gam1 -= kInvGamma[k + 1] * pw;
        pw *= mu2;
    }
    if (n % 2 == 1) {
        gam2 += kInvGamma[n - 1] * pw;
    }
    return {gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1};
}

double bessel_k(double nu, double z) {
    KPair k = bessel_k_scaled(nu, z);
    if (k.log_scale == 0) {
        return k.k_mu;
    }
    return k.k_mu * std::exp(k.log_scale);
}

double log_bessel_k(double nu, double z) {
    KPair k = bessel_k_scaled(nu, z);
    return std::log(k.k_mu) + k.log_scale;
}

}  // namespace speckleq
