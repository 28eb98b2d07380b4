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

#ifndef SPECKLEQ_MEASUREMENT_H
#define SPECKLEQ_MEASUREMENT_H

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "speckleq/interferometer.h"
#include "speckleq/sources.h"

namespace speckleq {

/// Fractional singles flux at outputs 1 and 2 and the true pair-coincidence kernel.
struct IdealOutcome {
    double s1 = 0;
    double s2 = 0;
    double c_pair = 0;
};

enum class NoiseMode { Noiseless, Poisson };

std::string to_string(NoiseMode m);
NoiseMode noise_mode_from_string(const std::string &s);

struct DetectorConfig {
    double tau_c = 2.5e-9;       ///< coincidence window [s]
    double T = 15.0;             ///< integration time per setting [s]
    double singles_rate = 2e6;   ///< B, counts/s per input arm before the medium
    double pair_rate = 4e5;      ///< B_p, pairs/s
    double dark1 = 100;          ///< counts/s
    double dark2 = 100;
    NoiseMode noise_mode = NoiseMode::Poisson;

    void validate() const;
    /// Brightness diagnostic B_p / (tau_c B^2): true coincidences per accidental.
    double eta_s() const;
};

/// Rates in counts/s. R = tau_c I1 I2 is always recomputed from the stored I1, I2.
struct MeasurementRecord {
    size_t setting_index = 0;
    double I1 = 0;
    double I2 = 0;
    double C = 0;
    double R = 0;
    double g2 = 0;  ///< C / R, meaningful only when g2_valid
    bool g2_valid = false;
};

struct Provenance {
    SourceModel source;
    InterferometerConfig interferometer;
    DetectorConfig detector;
    uint64_t master_seed = 0;
};

struct RecordSet {
    std::vector<MeasurementRecord> records;
    std::optional<Provenance> provenance;  ///< absent for record sets read back from disk
};

/// |t1a t2b|^2 + |t1b t2a|^2 + 2x Re(t1a t2b conj(t1b t2a)); outputs are rows 0 and 1.
double pair_coincidence_kernel(const TransmissionMatrix &tm, size_t a, size_t b, double x);

/// Coincidence kernel of (|20> + |02>)/sqrt(2) on inputs a, b with input dephasing. `psi` is
/// the residual phase, used only by RmsResidual.
double noon_coincidence_kernel(const TransmissionMatrix &tm, size_t a, size_t b, DephasingMode mode, double psi);

IdealOutcome ideal_outcome(const SourceModel &source, const TransmissionMatrix &tm, std::mt19937_64 &rng);

/// Spectral variant. `weights` may carry precomputed spectral_pair_weights for SpectralBiphoton;
/// when empty they are derived from the source's JSA (or default_jsa()).
IdealOutcome ideal_outcome(const SourceModel &source, const SpectralTransmission &st, std::mt19937_64 &rng,
                           std::span<const PairWeight> weights = {});

MeasurementRecord detect(const IdealOutcome &ideal, const DetectorConfig &cfg, std::mt19937_64 &rng);

/// N independent settings; setting k draws its matrices, N00N phase and detector noise from
/// streams derived from (master_seed, k), so the result does not depend on `workers`.
/// workers = 0 reads SPECKLEQ_WORKERS, falling back to the hardware concurrency.
RecordSet run_ensemble(const SourceModel &source, const InterferometerConfig &icfg, const DetectorConfig &dcfg,
                       size_t n_settings, uint64_t master_seed, size_t workers = 0);

size_t worker_count_from_env();

}  // namespace speckleq

#endif
