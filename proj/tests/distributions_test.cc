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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "speckleq/errors.h"

using speckleq::AnalyticPdf;
using speckleq::NegLogNormalization;
using speckleq::PdfFamily;

namespace {

const double kModeGrid[] = {1, 2, 3, 5, 7, 14, 20};

// Composite Simpson in long double over u = sqrt(x), using the standard library's Bessel K.
// Independent of the library's own Bessel code and adaptive quadrature.
long double k_density_ref(long double x, long double d) {
    if (x <= 0) return 0;
    return 2 * d / std::tgamma(d) * std::pow(d * x, (d - 1) / 2) * std::cyl_bessel_k(d - 1, 2 * std::sqrt(d * x));
}

struct Moments {
    long double m0, m1, m2;
};

Moments simpson_moments(long double d, long double cutoff, int n = 200000) {
    long double b = std::sqrt(cutoff), h = b / n;
    Moments m{0, 0, 0};
    for (int i = 0; i <= n; i++) {
        long double u = h * i;
        long double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        long double x = u * u;
        long double f = 2 * u * k_density_ref(x, d);
        if (u == 0) f = 0;
        m.m0 += w * f;
        m.m1 += w * f * x;
        m.m2 += w * f * x * x;
    }
    m.m0 *= h / 3;
    m.m1 *= h / 3;
    m.m2 *= h / 3;
    return m;
}

std::vector<double> sorted_cdf_check_samples(size_t n, uint64_t seed, const std::function<double(std::mt19937_64 &)> &draw) {
    std::mt19937_64 rng(seed);
    std::vector<double> xs(n);
    for (auto &x : xs) x = draw(rng);
    return xs;
}

}  // namespace

TEST(pdf_intensity_gamma, reference_values) {
    ASSERT_NEAR(speckleq::pdf_intensity_gamma(1, 1), std::exp(-1.0), 1e-15);
    ASSERT_NEAR(speckleq::pdf_intensity_gamma(1, 2), 4 * std::exp(-2.0), 1e-15);
    ASSERT_EQ(speckleq::pdf_intensity_gamma(-0.1, 2), 0.0);
    ASSERT_THROW(speckleq::pdf_intensity_gamma(1, 0), speckleq::DomainError);
}

TEST(pdf_intensity_gamma, unit_mean_and_inverse_d_visibility) {
    for (double d : kModeGrid) {
        auto m = speckleq::pdf_moments({PdfFamily::IntensityGamma, d});
        ASSERT_NEAR(m.mass, 1, 1e-6);
        ASSERT_NEAR(m.mean, 1, 1e-6);
        ASSERT_NEAR(m.visibility, 1 / d, 1e-6);
    }
}

TEST(pdf_coincidence_k, reference_value_d1) {
    ASSERT_NEAR(speckleq::pdf_coincidence_k(1, 1), 0.22778774549906683, 1e-13);
    ASSERT_TRUE(std::isinf(speckleq::pdf_coincidence_k(0, 1)));
    ASSERT_NEAR(speckleq::pdf_coincidence_k(0, 3), 1.5, 1e-12);
}

TEST(pdf_coincidence_k, matches_independent_expression) {
    for (double d : {1.0, 2.0, 4.5, 14.0}) {
        for (double x : {1e-3, 0.3, 1.0, 2.5, 9.0}) {
            double ref = static_cast<double>(k_density_ref(x, d));
            ASSERT_NEAR(speckleq::pdf_coincidence_k(x, d) / ref, 1.0, 1e-11) << d << " " << x;
        }
    }
}

TEST(pdf_coincidence_k, moments_follow_product_of_gammas) {
    for (double d : kModeGrid) {
        auto m = speckleq::pdf_moments({PdfFamily::CoincidenceK, d});
        ASSERT_NEAR(m.mass, 1, 1e-6) << d;
        ASSERT_NEAR(m.mean, 1, 1e-6) << d;
        ASSERT_NEAR(m.visibility, 1 + 2 / d, 1e-5) << d;
    }
}

TEST(pdf_coincidence_k, monte_carlo_product_matches_cdf) {
    // exponential(1) x Gamma(d, 1/d) is K-distributed with parameter d.
    const double d = 2;
    auto xs = sorted_cdf_check_samples(20000, 11, [d](std::mt19937_64 &rng) {
        std::exponential_distribution<double> e(1.0);
        std::gamma_distribution<double> g(d, 1 / d);
        return e(rng) * g(rng);
    });
    auto rep = speckleq::goodness_of_fit(xs, {PdfFamily::CoincidenceK, d}, speckleq::GofKind::KS);
    ASSERT_LT(rep.statistic, 0.015);
}

TEST(pdf_accidental, equals_k_distribution_at_d1) {
    for (double x = 1e-4; x <= 30; x *= 1.07) {
        double a = speckleq::pdf_accidental(x, 1);
        double k = speckleq::pdf_coincidence_k(x, 1);
        ASSERT_NEAR(a, k, 1e-12 * std::max(1.0, k)) << x;
    }
}

TEST(pdf_accidental, moments) {
    for (double d : kModeGrid) {
        auto m = speckleq::pdf_moments({PdfFamily::AccidentalProduct, d});
        ASSERT_NEAR(m.mass, 1, 1e-6) << d;
        ASSERT_NEAR(m.mean, 1, 1e-6) << d;
        ASSERT_NEAR(m.visibility, (1 + 1 / d) * (1 + 1 / d) - 1, 1e-5) << d;
    }
    ASSERT_NEAR(speckleq::pdf_moments({PdfFamily::AccidentalProduct, 2}).visibility, 1.25, 1e-6);
}

TEST(pdf_accidental, monte_carlo_product_matches_cdf) {
    const double d = 3;
    auto xs = sorted_cdf_check_samples(20000, 5, [d](std::mt19937_64 &rng) {
        std::gamma_distribution<double> g(d, 1 / d);
        return g(rng) * g(rng);
    });
    auto rep = speckleq::goodness_of_fit(xs, {PdfFamily::AccidentalProduct, d}, speckleq::GofKind::KS);
    ASSERT_LT(rep.statistic, 0.015);
}

TEST(pdf_g2_indistinguishable, uniform) {
    ASSERT_EQ(speckleq::pdf_g2_indistinguishable(0.5, 1), 0.5);
    ASSERT_EQ(speckleq::pdf_g2_indistinguishable(2.5, 1), 0.0);
    auto m = speckleq::pdf_moments({PdfFamily::G2Uniform, 1, 1});
    ASSERT_NEAR(m.mass, 1, 1e-9);
    ASSERT_NEAR(m.visibility, 1.0 / 3, 1e-9);
}

TEST(pdf_g2_distinguishable, normalization_modes) {
    auto exact = speckleq::pdf_moments({PdfFamily::G2NegLog, 1, 1, NegLogNormalization::Exact});
    ASSERT_NEAR(exact.mass, 1, 1e-6);
    ASSERT_NEAR(exact.visibility, 1.0 / 9, 1e-6);
    auto pi = speckleq::pdf_moments({PdfFamily::G2NegLog, 1, 1, NegLogNormalization::PiPrefactor});
    ASSERT_NEAR(pi.mass, 2 / M_PI, 1e-6);
    ASSERT_TRUE(std::isinf(speckleq::pdf_g2_distinguishable(1, 1)));
    ASSERT_EQ(speckleq::pdf_g2_distinguishable(2.1, 1), 0.0);
}

TEST(pdf_g2_distinguishable, ratio_of_uniforms_monte_carlo) {
    // g2 / mean = 2 (u + v - 2uv) with u, v uniform.
    auto xs = sorted_cdf_check_samples(20000, 3, [](std::mt19937_64 &rng) {
        std::uniform_real_distribution<double> u(0, 1);
        double a = u(rng), b = u(rng);
        return 2 * (a + b - 2 * a * b);
    });
    auto rep = speckleq::goodness_of_fit(xs, {PdfFamily::G2NegLog, 1, 1}, speckleq::GofKind::KS);
    ASSERT_LT(rep.statistic, 0.015);
}

TEST(pdf_moments, mean_scaling_of_g2_families) {
    auto m = speckleq::pdf_moments({PdfFamily::G2NegLog, 1, 7.5});
    ASSERT_NEAR(m.mean, 7.5, 1e-6);
    ASSERT_NEAR(m.visibility, 1.0 / 9, 1e-6);
}

TEST(truncated_vc, no_cutoff_limit) {
    ASSERT_NEAR(speckleq::truncated_vc(1, std::numeric_limits<double>::infinity()), 3.0, 1e-4);
    ASSERT_NEAR(speckleq::truncated_vc(1, 1e6), 3.0, 1e-4);
}

TEST(truncated_vc, matches_independent_quadrature) {
    for (auto [d, cut] : {std::pair{1.0, 12.0}, {2.0, 6.0}, {3.0, 20.0}}) {
        auto m = simpson_moments(d, cut);
        long double mu = m.m1 / m.m0;
        double ref = static_cast<double>((m.m2 / m.m0 - mu * mu) / (mu * mu));
        ASSERT_NEAR(speckleq::truncated_vc(d, cut), ref, 1e-6) << d;
    }
}

TEST(truncated_vc, rare_event_bias_values) {
    ASSERT_NEAR(speckleq::truncated_vc(1, 12), 2.39, 0.05);
    ASSERT_NEAR(speckleq::truncated_vc(2, 6), 1.39, 0.05);
    ASSERT_THROW(speckleq::truncated_vc(1, 0), speckleq::DomainError);
}

TEST(truncated_vc, monotone_in_cutoff) {
    double prev = 0;
    for (double c : {2.0, 4.0, 8.0, 16.0, 32.0}) {
        double v = speckleq::truncated_vc(1, c);
        ASSERT_GT(v, prev);
        prev = v;
    }
}

TEST(analytic_pdf, cdf_is_integral_of_density) {
    std::vector<AnalyticPdf> pdfs = {{PdfFamily::IntensityGamma, 3},      {PdfFamily::CoincidenceK, 1},
                                     {PdfFamily::CoincidenceK, 5},        {PdfFamily::AccidentalProduct, 2},
                                     {PdfFamily::G2Uniform, 1, 2},        {PdfFamily::G2NegLog, 1, 2}};
    for (const auto &pdf : pdfs) {
        double prev = 0;
        for (double x : {0.3, 0.9, 1.7, 2.5, 3.9}) {
            double c = pdf.cdf(x);
            ASSERT_GE(c, prev - 1e-12);
            ASSERT_LE(c, 1 + 1e-9);
            prev = c;
        }
        // Numerical derivative of the cdf reproduces the density away from singular points.
        double x = 0.7, h = 1e-4;
        double slope = (pdf.cdf(x + h) - pdf.cdf(x - h)) / (2 * h);
        ASSERT_NEAR(slope, pdf.density(x), 1e-5 * std::max(1.0, pdf.density(x))) << pdf.describe();
    }
}

TEST(analytic_pdf, validate_rejects_bad_parameters) {
    ASSERT_THROW((AnalyticPdf{PdfFamily::IntensityGamma, -1}.validate()), speckleq::DomainError);
    ASSERT_THROW((AnalyticPdf{PdfFamily::G2Uniform, 1, 0}.validate()), speckleq::DomainError);
}

TEST(goodness_of_fit, exponential_samples) {
    auto xs = sorted_cdf_check_samples(10000, 1, [](std::mt19937_64 &rng) {
        return std::exponential_distribution<double>(1.0)(rng);
    });
    auto good = speckleq::goodness_of_fit(xs, {PdfFamily::IntensityGamma, 1}, speckleq::GofKind::KS);
    ASSERT_LT(good.statistic, 0.02);
    ASSERT_EQ(good.n_samples, 10000u);
    auto bad = speckleq::goodness_of_fit(xs, {PdfFamily::IntensityGamma, 5}, speckleq::GofKind::KS);
    ASSERT_GT(bad.statistic, 0.2);
    ASSERT_LT(bad.p_value, 1e-10);
    auto chi = speckleq::goodness_of_fit(xs, {PdfFamily::IntensityGamma, 1}, speckleq::GofKind::ChiSquare);
    ASSERT_GT(chi.p_value, 1e-4);
    ASSERT_GT(chi.degrees_of_freedom, 5u);
}

TEST(goodness_of_fit, uniform_samples) {
    auto xs = sorted_cdf_check_samples(10000, 2, [](std::mt19937_64 &rng) {
        return std::uniform_real_distribution<double>(0, 2)(rng);
    });
    auto rep = speckleq::goodness_of_fit(xs, {PdfFamily::G2Uniform, 1, 1}, speckleq::GofKind::KS);
    ASSERT_LT(rep.statistic, 0.02);
}

TEST(goodness_of_fit, rejects_small_or_degenerate_input) {
    std::vector<double> few(50, 1.0);
    ASSERT_THROW(speckleq::goodness_of_fit(few, {PdfFamily::IntensityGamma, 1}, speckleq::GofKind::KS),
                 speckleq::InsufficientData);
    std::vector<double> flat(500, 1.0);
    ASSERT_THROW(speckleq::goodness_of_fit(flat, {PdfFamily::IntensityGamma, 1}, speckleq::GofKind::KS),
                 speckleq::DegenerateInput);
}

TEST(normalize_by_mean, unit_mean) {
    std::vector<double> xs = {1, 2, 3, 6};
    auto n = speckleq::normalize_by_mean(xs);
    ASSERT_DOUBLE_EQ(n[0], 1.0 / 3);
    ASSERT_DOUBLE_EQ(n[3], 2.0);
}
