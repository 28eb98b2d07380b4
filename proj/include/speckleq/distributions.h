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

#ifndef SPECKLEQ_DISTRIBUTIONS_H
#define SPECKLEQ_DISTRIBUTIONS_H

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace speckleq {

/// Reference densities of normalized outcomes. The first three take x = value / mean and a
/// mode count d; the g2 families take the raw g2 with its mean.
enum class PdfFamily { IntensityGamma, CoincidenceK, AccidentalProduct, G2Uniform, G2NegLog };

/// Prefactor of the distinguishable-g2 density. Exact integrates to one; PiPrefactor keeps
/// the 1/(pi mean) form that is often printed for it and integrates to 2/pi.
enum class NegLogNormalization { Exact, PiPrefactor };

std::string to_string(PdfFamily f);

struct AnalyticPdf {
    PdfFamily family = PdfFamily::IntensityGamma;
    double d = 1;
    double mean = 1;
    NegLogNormalization normalization = NegLogNormalization::Exact;

    /// Validates parameters; throws DomainError.
    void validate() const;
    double density(double x) const;
    /// Integral of the density from the lower support edge to x.
    double cdf(double x) const;
    /// Upper edge of the support (infinity for the mode-count families).
    double support_max() const;
    std::string describe() const;
};

/// d^d / Gamma(d) x^(d-1) exp(-d x).
double pdf_intensity_gamma(double x, double d);

/// K-distribution (2d / Gamma(d)) (d x)^((d-1)/2) K_{d-1}(2 sqrt(d x)). At x = 0 returns the
/// finite limit d / (d - 1) for d > 1 and +infinity for d <= 1.
double pdf_coincidence_k(double x, double d);

/// Product of two independent unit-mean Gamma(d) variables:
/// (2 / Gamma(d)^2) d^(2d) x^(d-1) K_0(2 d sqrt(x)).
double pdf_accidental(double x, double d);

/// Uniform on [0, 2 mean].
double pdf_g2_indistinguishable(double x, double mean);

/// -log|x/mean - 1| / (2 mean) on [0, 2 mean] for Exact; +infinity at x = mean.
double pdf_g2_distinguishable(double x, double mean, NegLogNormalization mode = NegLogNormalization::Exact);

struct PdfMoments {
    double mass;
    double mean;
    double visibility;  ///< Var / mean^2 of the (renormalized) density
};

/// Moments of the density restricted to [0, upper], by adaptive quadrature.
PdfMoments pdf_moments(const AnalyticPdf &pdf, double upper = std::numeric_limits<double>::infinity());

/// Visibility of the K-distribution conditioned on C/C_mean <= cutoff: the bias from
/// never observing the rare events in its long tail.
double truncated_vc(double d, double cutoff);

enum class GofKind { KS, ChiSquare };

std::string to_string(GofKind k);

struct GofReport {
    double statistic = 0;
    GofKind kind = GofKind::KS;
    double p_value = 1;  ///< KS: asymptotic Kolmogorov p-value; chi-square: upper tail probability
    size_t n_samples = 0;
    size_t degrees_of_freedom = 0;  ///< chi-square only
};

/// Needs at least 100 samples with non-zero spread.
GofReport goodness_of_fit(std::span<const double> samples, const AnalyticPdf &pdf, GofKind kind);

/// samples / mean(samples).
std::vector<double> normalize_by_mean(std::span<const double> samples);

}  // namespace speckleq

#endif
