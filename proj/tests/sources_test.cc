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

#include "speckleq/sources.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "speckleq/errors.h"

using namespace speckleq;

namespace {

SourceModel biphoton(double x) {
    SourceModel s;
    s.kind = SourceKind::BiphotonPair;
    s.x = x;
    return s;
}

JointSpectralAmplitude flat_jsa(size_t n) {
    const double inf = std::numeric_limits<double>::infinity();
    return jsa_gaussian(inf, inf, 810, n, 1.0);
}

}  // namespace

TEST(make_source, canonical_pair_valid) {
    auto s = make_source(biphoton(1));
    ASSERT_EQ(s.input_modes.size(), 2u);
}

TEST(make_source, x_out_of_range) {
    try {
        make_source(biphoton(1.2));
        FAIL() << "expected a validation error";
    } catch (const ValidationError &e) {
        ASSERT_EQ(e.field(), "x");
    }
}

TEST(make_source, mixed_biphoton_needs_two_modes_per_pair) {
    SourceModel s;
    s.kind = SourceKind::MixedBiphoton;
    s.d_mixture = 2;
    s.input_modes = {0, 1, 2, 3};
    ASSERT_NO_THROW(make_source(s));
    s.input_modes = {0, 1, 2};
    ASSERT_THROW(make_source(s), ValidationError);
}

TEST(make_source, noon_with_three_modes_rejected) {
    SourceModel s;
    s.kind = SourceKind::Noon2;
    s.input_modes = {0, 1, 2};
    try {
        make_source(s);
        FAIL();
    } catch (const ValidationError &e) {
        ASSERT_EQ(e.field(), "input_modes");
    }
}

TEST(make_source, other_field_checks) {
    SourceModel dup = biphoton(1);
    dup.input_modes = {1, 1};
    ASSERT_THROW(make_source(dup), ValidationError);

    SourceModel mono = biphoton(1);
    mono.n_spectral_bins = 3;
    ASSERT_THROW(make_source(mono), ValidationError);

    SourceModel disp;
    disp.kind = SourceKind::IncoherentDispersive;
    disp.input_modes = {0, 1};
    disp.n_spectral_bins = 10;
    disp.d_incoherent = 20;
    ASSERT_NO_THROW(make_source(disp));
    disp.d_incoherent = 19;
    ASSERT_THROW(make_source(disp), ValidationError);
}

TEST(source_kind, string_round_trip) {
    for (auto k : {SourceKind::HeraldedSinglePhoton, SourceKind::TwoPhotonFock, SourceKind::BiphotonPair,
                   SourceKind::Noon2, SourceKind::IncoherentMixture, SourceKind::MixedBiphoton,
                   SourceKind::SpectralBiphoton, SourceKind::IncoherentDispersive}) {
        ASSERT_EQ(source_kind_from_string(to_string(k)), k);
    }
    ASSERT_EQ(dephasing_mode_from_string("FullAverage"), DephasingMode::FullAverage);
    ASSERT_THROW(source_kind_from_string("Laser"), ValidationError);
}

TEST(jsa_gaussian, normalized) {
    for (auto [p, pm] : {std::pair{0.1, 2.0}, {1.0, 1.0}, {3.0, 0.4}}) {
        auto jsa = jsa_gaussian(p, pm, 810, 64);
        ASSERT_NEAR(jsa.grid.squaredNorm(), 1.0, 1e-10);
    }
    ASSERT_THROW(jsa_gaussian(0, 1, 810, 64), ValidationError);
    ASSERT_THROW(jsa_gaussian(1, 1, 810, 4), ValidationError);
}

TEST(jsa_gaussian, separable_limit) {
    auto jsa = flat_jsa(32);
    ASSERT_NEAR(jsa_correlation(jsa), 0.0, 1e-12);
    ASSERT_NEAR(effective_spectral_modes(jsa), 1.0, 1e-9);
}

TEST(jsa_gaussian, anticorrelated_for_narrow_pump) {
    const double sp = 0.2, spm = 2.0;
    auto jsa = jsa_gaussian(sp, spm, 810, 256);
    double expect = (sp * sp - spm * spm) / (sp * sp + spm * spm);
    ASSERT_LT(jsa_correlation(jsa), -0.9);
    ASSERT_NEAR(jsa_correlation(jsa), expect, 0.01);
}

TEST(effective_spectral_modes, rank_two) {
    JointSpectralAmplitude jsa = flat_jsa(8);
    jsa.grid.setZero();
    jsa.grid(1, 6) = std::sqrt(0.5);
    jsa.grid(4, 2) = Complex(0, std::sqrt(0.5));
    ASSERT_NEAR(effective_spectral_modes(jsa), 2.0, 1e-12);
}

TEST(effective_spectral_modes, gaussian_schmidt_number) {
    // Gaussian amplitude with widths a (sum) and b (difference) has K = (a/b + b/a) / 2.
    auto jsa = jsa_gaussian(0.5, 1.5, 810, 128);
    ASSERT_NEAR(effective_spectral_modes(jsa), (3 + 1.0 / 3) / 2, 0.02);
}

TEST(effective_spectral_modes, default_matches_fiber_mode_count) {
    double k = effective_spectral_modes(default_jsa());
    ASSERT_NEAR(k, 7.0, 1.0);
}

TEST(effective_spectral_modes, global_phase_invariant) {
    auto jsa = jsa_gaussian(0.4, 1.2, 810, 64);
    double k = effective_spectral_modes(jsa);
    jsa.grid *= std::polar(1.0, 0.7);
    ASSERT_NEAR(effective_spectral_modes(jsa), k, 1e-10);
    jsa.grid.setZero();
    ASSERT_THROW(effective_spectral_modes(jsa), DegenerateInput);
}

TEST(spectral_pair_weights, monochromatic) {
    auto w = spectral_pair_weights(default_jsa(), 1);
    ASSERT_EQ(w.size(), 1u);
    ASSERT_EQ(w[0].bin_s, 0u);
    ASSERT_EQ(w[0].bin_i, 0u);
    ASSERT_NEAR(w[0].weight, 1.0, 1e-12);
}

TEST(spectral_pair_weights, anticorrelated_diagonal) {
    const size_t n = 7;
    auto w = spectral_pair_weights(default_jsa(), n);
    double total = 0;
    std::vector<double> best(n, 0);
    std::vector<size_t> arg(n, 0);
    std::vector<double> signal_marginal(n, 0);
    for (const auto &p : w) {
        total += p.weight;
        signal_marginal[p.bin_s] += p.weight;
        if (p.weight > best[p.bin_s]) {
            best[p.bin_s] = p.weight;
            arg[p.bin_s] = p.bin_i;
        }
    }
    ASSERT_NEAR(total, 1.0, 1e-10);
    for (size_t s = 0; s < n; s++) {
        ASSERT_EQ(arg[s], n - 1 - s);
        ASSERT_NEAR(signal_marginal[s], 1.0 / n, 1e-9);
    }
}

TEST(spectral_pair_weights, separable_flat) {
    auto w = spectral_pair_weights(flat_jsa(32), 2);
    ASSERT_EQ(w.size(), 4u);
    for (const auto &p : w) ASSERT_NEAR(p.weight, 0.25, 1e-12);
}

TEST(indistinguishability_from_delay, gaussian_overlap) {
    ASSERT_EQ(indistinguishability_from_delay(0, 1e-12), 1.0);
    ASSERT_NEAR(indistinguishability_from_delay(1e-12, 1e-12), std::exp(-1.0), 1e-15);
    ASSERT_EQ(indistinguishability_from_delay(-3e-12, 1e-12), indistinguishability_from_delay(3e-12, 1e-12));
    ASSERT_LT(indistinguishability_from_delay(1e-9, 1e-12), 1e-300);
    ASSERT_THROW(indistinguishability_from_delay(0, 0), ValidationError);
}

TEST(nominal_mode_count, per_kind) {
    SourceModel s;
    s.kind = SourceKind::SpectralBiphoton;
    s.n_spectral_bins = 7;
    ASSERT_EQ(nominal_mode_count(s), 14);
    s.kind = SourceKind::MixedBiphoton;
    s.d_mixture = 2;
    ASSERT_EQ(nominal_mode_count(s), 4);
}
