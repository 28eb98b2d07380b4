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

#include "speckleq/statistics.h"

#include <algorithm>
#include <cmath>

#include "speckleq/errors.h"

namespace speckleq {

double mean(std::span<const double> xs) {
    if (xs.empty()) {
        throw InsufficientData("mean of an empty sample");
    }
    double s = 0;
    for (double x : xs) {
        s += x;
    }
    return s / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) {
        throw InsufficientData("variance needs at least two samples");
    }
    double mu = mean(xs);
    double ss = 0;
    for (double x : xs) {
        ss += (x - mu) * (x - mu);
    }
    return ss / static_cast<double>(xs.size() - 1);
}

double visibility(std::span<const double> xs) {
    if (xs.size() < 2) {
        throw InsufficientData("visibility needs at least two samples");
    }
    double mu = mean(xs);
    if (mu == 0) {
        throw DegenerateInput("visibility of a zero-mean sample");
    }
    return sample_variance(xs) / (mu * mu);
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw InsufficientData("pearson: sample lengths differ");
    }
    if (xs.size() < 2) {
        throw InsufficientData("pearson needs at least two pairs");
    }
    auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&v](double x) { return x == v.front(); });
    };
    if (constant(xs) || constant(ys)) {
        return std::nullopt;
    }
    double mx = mean(xs);
    double my = mean(ys);
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        double dx = xs[i] - mx;
        double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) {
        return std::nullopt;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double ks_distance_sorted(std::span<const double> sorted, const std::function<double(double)> &cdf) {
    if (sorted.empty()) {
        throw InsufficientData("KS distance of an empty sample");
    }
    double n = static_cast<double>(sorted.size());
    double d = 0;
    for (size_t i = 0; i < sorted.size(); i++) {
        double f = cdf(sorted[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)> &cdf) {
    std::sort(samples.begin(), samples.end());
    return ks_distance_sorted(samples, cdf);
}

double ks_distance_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw InsufficientData("two-sample KS with an empty side");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = static_cast<double>(a.size());
    double nb = static_cast<double>(b.size());
    size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) i++;
        while (j < b.size() && b[j] <= x) j++;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double kolmogorov_p_value(double distance, size_t n) {
    double sn = std::sqrt(static_cast<double>(n));
    double lambda = (sn + 0.12 + 0.11 / sn) * distance;
    if (lambda < 1e-3) {
        return 1.0;
    }
    double sum = 0;
    double sign = 1;
    for (int k = 1; k <= 100; k++) {
        double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) {
            break;
        }
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace speckleq
