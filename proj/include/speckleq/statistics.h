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

#ifndef SPECKLEQ_STATISTICS_H
#define SPECKLEQ_STATISTICS_H

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace speckleq {

double mean(std::span<const double> xs);

/// Unbiased (n - 1) sample variance.
double sample_variance(std::span<const double> xs);

/// Var/mean² with the unbiased variance: speckle visibility, i.e. the squared contrast.
/// Throws InsufficientData for fewer than two samples and DegenerateInput for a zero mean.
double visibility(std::span<const double> xs);

/// Pearson correlation; nullopt when either side has zero spread.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

/// One-sample Kolmogorov-Smirnov distance sup|F_n - F|. `sorted` must be ascending.
double ks_distance_sorted(std::span<const double> sorted, const std::function<double(double)> &cdf);
double ks_distance(std::vector<double> samples, const std::function<double(double)> &cdf);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic Kolmogorov tail probability with the Stephens small-sample correction.
double kolmogorov_p_value(double distance, size_t n);

}  // namespace speckleq

#endif
