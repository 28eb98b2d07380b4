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

#ifndef SPECKLEQ_FEATURES_H
#define SPECKLEQ_FEATURES_H

#include <cstdint>
#include <optional>
#include <string>

#include "speckleq/measurement.h"

namespace speckleq {

/// A point estimate with its bootstrap standard error and 95% percentile interval.
struct Estimate {
    double value = 0;
    double se = 0;
    double ci_low = 0;
    double ci_high = 0;
};

struct Corrections {
    bool subtract_dark = false;
    double dark1 = 0;  ///< counts/s subtracted from I1 before moments
    bool subtract_accidentals = false;  ///< use C - R per record for V_C
    size_t bootstrap_resamples = 500;   ///< 0 disables the bootstrap
    uint64_t bootstrap_seed = 0;
};

struct FeatureVector {
    Estimate V_I;
    Estimate V_C;
    std::optional<Estimate> V_g2;     ///< absent when no record has a valid g2
    std::optional<Estimate> mean_g2;
    std::optional<Estimate> d_hat;    ///< 1 / V_I; absent when V_I == 0
    Estimate purity;                  ///< V_C - 2 V_I
    std::optional<Estimate> D_hat;    ///< from V_C = 1 + 1/D; absent when V_C <= 1
    std::optional<Estimate> corr_C_g2;
    bool dark_subtracted = false;
    bool accidental_corrected = false;
    size_t n_records = 0;
    size_t n_g2_valid = 0;
};

inline double purity_from_visibilities(double v_c, double v_i) {
    return v_c - 2.0 * v_i;
}

/// Requires at least 100 records.
FeatureVector estimate_features(const RecordSet &rs, const Corrections &corrections = {});

/// Multi-line "name = value +- se [lo, hi]" text; identical input gives identical bytes.
std::string format_features(const FeatureVector &f);

}  // namespace speckleq

#endif
