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

#ifndef SPECKLEQ_SOURCES_H
#define SPECKLEQ_SOURCES_H

#include <optional>
#include <string>
#include <vector>

#include "speckleq/interferometer.h"

namespace speckleq {

enum class SourceKind {
    HeraldedSinglePhoton,
    TwoPhotonFock,
    BiphotonPair,
    Noon2,
    IncoherentMixture,
    MixedBiphoton,
    SpectralBiphoton,
    IncoherentDispersive,
};

enum class DephasingMode {
    FullAverage,  ///< input phase averaged out within one exposure
    RmsResidual,  ///< one residual phase per setting with a sqrt(2)-weighted cross term
};

std::string to_string(SourceKind k);
SourceKind source_kind_from_string(const std::string &s);
std::string to_string(DephasingMode m);
DephasingMode dephasing_mode_from_string(const std::string &s);

/// Joint spectral amplitude on a (signal, idler) grid; rows index signal wavelength.
struct JointSpectralAmplitude {
    ComplexMatrix grid;
    std::vector<double> signal_nm;
    std::vector<double> idler_nm;
};

struct SourceModel {
    SourceKind kind = SourceKind::BiphotonPair;
    std::vector<size_t> input_modes{0, 1};
    double x = 1.0;             ///< indistinguishability, BiphotonPair / SpectralBiphoton
    size_t d_incoherent = 1;    ///< IncoherentMixture / IncoherentDispersive
    size_t d_mixture = 1;       ///< MixedBiphoton: number of mixed mode pairs
    size_t n_spectral_bins = 1;
    DephasingMode dephasing_mode = DephasingMode::RmsResidual;
    std::optional<JointSpectralAmplitude> jsa;
};

/// Validates and returns the model; throws ValidationError naming the field at fault.
SourceModel make_source(SourceModel spec);

/// Number of occupied modes d that sets the intensity visibility 1/d.
double nominal_mode_count(const SourceModel &source);

/// Psi ~ exp(-(ws + wi - 2w0)^2 / 2 sp^2) exp(-(ws - wi)^2 / 2 spm^2) on a grid_size^2 grid of
/// wavelength detunings, normalized so that sum |Psi|^2 = 1. `half_span_nm` = 0 picks five
/// marginal standard deviations; it must be given when both bandwidths are infinite.
JointSpectralAmplitude jsa_gaussian(double pump_bandwidth_nm, double phasematch_bandwidth_nm, double center_nm,
                                    size_t grid_size, double half_span_nm = 0);

/// Parameters whose Schmidt number is close to the ~7 spectral modes seen in the long fiber.
JointSpectralAmplitude default_jsa();

/// Pearson correlation of signal and idler detunings under |Psi|^2.
double jsa_correlation(const JointSpectralAmplitude &jsa);

struct PairWeight {
    size_t bin_s;
    size_t bin_i;
    double weight;
};

/// Distributes |Psi|^2 over n_bins x n_bins spectral cells. Cells split each photon's marginal
/// spectrum into n_bins slices of equal flux, so every cell of one photon carries 1/n_bins.
/// Entries with zero weight are omitted.
std::vector<PairWeight> spectral_pair_weights(const JointSpectralAmplitude &jsa, size_t n_bins);

/// Schmidt number 1 / sum(lambda_k^2) of the JSA grid.
double effective_spectral_modes(const JointSpectralAmplitude &jsa);

/// Gaussian HOM overlap exp(-(delay / coherence)^2).
double indistinguishability_from_delay(double delay_s, double coherence_s);

}  // namespace speckleq

#endif
