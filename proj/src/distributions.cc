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

#include "speckleq/distributions.h"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "speckleq/errors.h"
#include "speckleq/quadrature.h"
#include "speckleq/special_functions.h"
#include "speckleq/statistics.h"

namespace speckleq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_order(double d, double min, const char *fn) {
    if (!(d >= min) || !std::isfinite(d)) {
        throw DomainError(std::string(fn) + ": mode parameter d must be >= " + std::to_string(min) + ", got " +
                          std::to_string(d));
    }
}

void require_mean(double mean, const char *fn) {
    if (!(mean > 0) || !std::isfinite(mean)) {
        throw DomainError(std::string(fn) + ": mean must be positive, got " + std::to_string(mean));
    }
}

bool mode_count_family(PdfFamily f) {
    return f == PdfFamily::IntensityGamma || f == PdfFamily::CoincidenceK || f == PdfFamily::AccidentalProduct;
}

// -log|t| antiderivative, t - t log|t|, continuous at 0.
double neg_log_primitive(double t) {
    return t == 0 ? 0.0 : t - t * std::log(std::abs(t));
}

double neg_log_prefactor(NegLogNormalization mode) {
    return mode == NegLogNormalization::Exact ? 0.5 : 1.0 / std::numbers::pi;
}

}  // namespace

std::string to_string(PdfFamily f) {
    switch (f) {
        case PdfFamily::IntensityGamma:
            return "IntensityGamma";
        case PdfFamily::CoincidenceK:
            return "CoincidenceK";
        case PdfFamily::AccidentalProduct:
            return "AccidentalProduct";
        case PdfFamily::G2Uniform:
            return "G2Uniform";
        case PdfFamily::G2NegLog:
            return "G2NegLog";
    }
    return "?";
}

std::string to_string(GofKind k) {
    return k == GofKind::KS ? "KS" : "ChiSquare";
}

double pdf_intensity_gamma(double x, double d) {
    if (!(d > 0) || !std::isfinite(d)) {
        throw DomainError("pdf_intensity_gamma: d must be positive, got " + std::to_string(d));
    }
    if (x < 0) return 0.0;
    if (x == 0) {
        return d < 1 ? kInf : (d == 1 ? 1.0 : 0.0);
    }
    return std::exp(d * std::log(d) - std::lgamma(d) + (d - 1) * std::log(x) - d * x);
}

double pdf_coincidence_k(double x, double d) {
    require_order(d, 1.0, "pdf_coincidence_k");
    if (x < 0) return 0.0;
    if (x == 0) {
        return d > 1 ? d / (d - 1) : kInf;
    }
    const double nu = d - 1;
    const double z = 2.0 * std::sqrt(d * x);
    double log_density = std::log(2.0 * d) - std::lgamma(d) + log_bessel_k(nu, z);
    if (nu > 0) {
        log_density += nu * std::log(0.5 * z);
    }
    return std::exp(log_density);
}

double pdf_accidental(double x, double d) {
    require_order(d, 1.0, "pdf_accidental");
    if (x < 0) return 0.0;
    if (x == 0) {
        return d > 1 ? 0.0 : kInf;
    }
    double log_density = std::log(2.0) - 2.0 * std::lgamma(d) + 2.0 * d * std::log(d) +
                         log_bessel_k(0.0, 2.0 * d * std::sqrt(x));
    if (d != 1) {
        log_density += (d - 1) * std::log(x);
    }
    return std::exp(log_density);
}

double pdf_g2_indistinguishable(double x, double mean) {
    require_mean(mean, "pdf_g2_indistinguishable");
    return (x >= 0 && x <= 2 * mean) ? 0.5 / mean : 0.0;
}

double pdf_g2_distinguishable(double x, double mean, NegLogNormalization mode) {
    require_mean(mean, "pdf_g2_distinguishable");
    if (x < 0 || x > 2 * mean) return 0.0;
    double t = std::abs(x / mean - 1.0);
    if (t == 0) return kInf;
    return -std::log(t) * neg_log_prefactor(mode) / mean;
}

void AnalyticPdf::validate() const {
    switch (family) {
        case PdfFamily::IntensityGamma:
            if (!(d > 0)) throw DomainError("IntensityGamma needs d > 0");
            break;
        case PdfFamily::CoincidenceK:
        case PdfFamily::AccidentalProduct:
            require_order(d, 1.0, "AnalyticPdf");
            break;
        case PdfFamily::G2Uniform:
        case PdfFamily::G2NegLog:
            require_mean(mean, "AnalyticPdf");
            break;
    }
}

double AnalyticPdf::density(double x) const {
    switch (family) {
        case PdfFamily::IntensityGamma:
            return pdf_intensity_gamma(x, d);
        case PdfFamily::CoincidenceK:
            return pdf_coincidence_k(x, d);
        case PdfFamily::AccidentalProduct:
            return pdf_accidental(x, d);
        case PdfFamily::G2Uniform:
            return pdf_g2_indistinguishable(x, mean);
        case PdfFamily::G2NegLog:
            return pdf_g2_distinguishable(x, mean, normalization);
    }
    return 0;
}

double AnalyticPdf::support_max() const {
    return mode_count_family(family) ? kInf : 2 * mean;
}

double AnalyticPdf::cdf(double x) const {
    validate();
    if (x <= 0) return 0.0;
    switch (family) {
        case PdfFamily::IntensityGamma:
            return boost::math::gamma_p(d, d * x);
        case PdfFamily::CoincidenceK:
        case PdfFamily::AccidentalProduct:
            if (std::isinf(x)) return 1.0;
            return std::min(1.0, integrate_sqrt_origin([this](double v) { return density(v); }, x));
        case PdfFamily::G2Uniform:
            return std::min(1.0, x / (2 * mean));
        case PdfFamily::G2NegLog: {
            double t = std::min(x / mean, 2.0) - 1.0;
            return neg_log_prefactor(normalization) * (neg_log_primitive(t) + 1.0);
        }
    }
    return 0;
}

std::string AnalyticPdf::describe() const {
    std::ostringstream os;
    os << to_string(family) << "(";
    if (mode_count_family(family)) {
        os << "d=" << d;
    } else {
        os << "mean=" << mean;
        if (family == PdfFamily::G2NegLog && normalization == NegLogNormalization::PiPrefactor) {
            os << ", pi-prefactor";
        }
    }
    os << ")";
    return os.str();
}

PdfMoments pdf_moments(const AnalyticPdf &pdf, double upper) {
    pdf.validate();
    auto moment = [&](int k) {
        auto f = [&pdf, k](double x) { return std::pow(x, k) * pdf.density(x); };
        if (mode_count_family(pdf.family)) {
            return integrate_sqrt_origin(f, upper);
        }
        double hi = std::min(upper, pdf.support_max());
        if (pdf.family == PdfFamily::G2NegLog && hi > pdf.mean) {
            return integrate_endpoint_singular(f, 0, pdf.mean) + integrate_endpoint_singular(f, pdf.mean, hi);
        }
        return integrate(f, 0, hi);
    };
    double m0 = moment(0);
    double m1 = moment(1);
    double m2 = moment(2);
    double mu = m1 / m0;
    return {m0, mu, (m2 / m0 - mu * mu) / (mu * mu)};
}

double truncated_vc(double d, double cutoff) {
    require_order(d, 1.0, "truncated_vc");
    if (!(cutoff > 0)) {
        throw DomainError("truncated_vc: cutoff must be positive, got " + std::to_string(cutoff));
    }
    return pdf_moments(AnalyticPdf{PdfFamily::CoincidenceK, d}, cutoff).visibility;
}

std::vector<double> normalize_by_mean(std::span<const double> samples) {
    double mu = mean(samples);
    if (mu == 0) {
        throw DegenerateInput("cannot normalize a zero-mean sample");
    }
    std::vector<double> out(samples.begin(), samples.end());
    for (double &v : out) v /= mu;
    return out;
}

namespace {

// CDF at each ascending sample, accumulating segment integrals instead of restarting at 0.
std::vector<double> cumulative_cdf(const AnalyticPdf &pdf, std::span<const double> sorted) {
    std::vector<double> out(sorted.size());
    if (pdf.family != PdfFamily::CoincidenceK && pdf.family != PdfFamily::AccidentalProduct) {
        for (size_t i = 0; i < sorted.size(); i++) out[i] = pdf.cdf(sorted[i]);
        return out;
    }
    auto g = [&pdf](double u) { return u == 0 ? 0.0 : 2.0 * u * pdf.density(u * u); };
    double acc = 0;
    double prev_u = 0;
    for (size_t i = 0; i < sorted.size(); i++) {
        double u = std::sqrt(std::max(0.0, sorted[i]));
        if (u > prev_u) {
            // Narrow gaps between neighbouring samples need no adaptivity; a fixed 7-point
            // Gauss rule is exact to well below the KS resolution there.
            acc += u - prev_u < 0.05 ? boost::math::quadrature::gauss<double, 7>::integrate(g, prev_u, u)
                                     : integrate(g, prev_u, u, 1e-10);
            prev_u = u;
        }
        out[i] = std::min(1.0, acc);
    }
    return out;
}

GofReport chi_square(std::span<const double> sorted, const AnalyticPdf &pdf) {
    const size_t n = sorted.size();
    const double lo = sorted.front();
    const double hi = sorted.back();
    size_t bins = std::max<size_t>(10, static_cast<size_t>(std::ceil(2.0 * std::pow(static_cast<double>(n), 0.4))));
    std::vector<double> edges(bins + 1);
    for (size_t b = 0; b <= bins; b++) {
        edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    }
    std::vector<double> observed(bins, 0), expected(bins, 0);
    size_t b = 0;
    for (double v : sorted) {
        while (b + 1 < bins && v >= edges[b + 1]) b++;
        observed[b] += 1;
    }
    // Outer bins absorb the tails of the support.
    std::vector<double> cdf_at(bins + 1);
    cdf_at[0] = 0.0;
    cdf_at[bins] = 1.0;
    for (size_t k = 1; k < bins; k++) cdf_at[k] = pdf.cdf(edges[k]);
    double total = pdf.family == PdfFamily::G2NegLog ? pdf.cdf(pdf.support_max()) : 1.0;
    cdf_at[bins] = total;
    for (size_t k = 0; k < bins; k++) {
        expected[k] = static_cast<double>(n) * std::max(0.0, cdf_at[k + 1] - cdf_at[k]) / total;
    }

    std::vector<double> obs_m, exp_m;
    double o_acc = 0, e_acc = 0;
    for (size_t k = 0; k < bins; k++) {
        o_acc += observed[k];
        e_acc += expected[k];
        if (e_acc >= 10) {
            obs_m.push_back(o_acc);
            exp_m.push_back(e_acc);
            o_acc = e_acc = 0;
        }
    }
    if (e_acc > 0 || o_acc > 0) {
        if (exp_m.empty()) {
            obs_m.push_back(o_acc);
            exp_m.push_back(e_acc);
        } else {
            obs_m.back() += o_acc;
            exp_m.back() += e_acc;
        }
    }
    if (exp_m.size() < 2) {
        throw DegenerateInput("chi-square: fewer than two bins with 10 expected counts");
    }
    double stat = 0;
    for (size_t k = 0; k < exp_m.size(); k++) {
        if (exp_m[k] <= 0) {
            stat = kInf;
            break;
        }
        stat += (obs_m[k] - exp_m[k]) * (obs_m[k] - exp_m[k]) / exp_m[k];
    }
    GofReport r;
    r.kind = GofKind::ChiSquare;
    r.statistic = stat;
    r.n_samples = n;
    r.degrees_of_freedom = exp_m.size() - 1;
    r.p_value = std::isfinite(stat) ? boost::math::cdf(boost::math::complement(
                                          boost::math::chi_squared(static_cast<double>(r.degrees_of_freedom)), stat))
                                    : 0.0;
    return r;
}

}  // namespace

GofReport goodness_of_fit(std::span<const double> samples, const AnalyticPdf &pdf, GofKind kind) {
    pdf.validate();
    if (samples.size() < 100) {
        throw InsufficientData("goodness_of_fit needs at least 100 samples, got " + std::to_string(samples.size()));
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    if (!std::isfinite(sorted.front()) || !std::isfinite(sorted.back())) {
        throw DegenerateInput("goodness_of_fit: non-finite samples");
    }
    if (sorted.front() == sorted.back()) {
        throw DegenerateInput("goodness_of_fit: all samples are equal");
    }
    if (kind == GofKind::ChiSquare) {
        return chi_square(sorted, pdf);
    }
    std::vector<double> cdf = cumulative_cdf(pdf, sorted);
    const double n = static_cast<double>(sorted.size());
    double dist = 0;
    for (size_t i = 0; i < sorted.size(); i++) {
        dist = std::max({dist, cdf[i] - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - cdf[i]});
    }
    GofReport r;
    r.kind = GofKind::KS;
    r.statistic = dist;
    r.n_samples = sorted.size();
    r.p_value = kolmogorov_p_value(dist, sorted.size());
    return r;
}

}  // namespace speckleq
