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

#ifndef SPECKLEQ_PIPELINE_H
#define SPECKLEQ_PIPELINE_H

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "speckleq/classifier.h"
#include "speckleq/config.h"
#include "speckleq/distributions.h"
#include "speckleq/features.h"
#include "speckleq/measurement.h"

namespace speckleq {

/// One reference-distribution comparison. `skipped` holds the reason when the fit could not
/// be evaluated (for example a constant column).
struct GofEntry {
    std::string quantity;
    AnalyticPdf pdf;
    std::optional<GofReport> ks;
    std::optional<GofReport> chi_square;
    std::string skipped;
};

/// Reference densities that apply to a source kind, evaluated on the record columns.
std::vector<GofEntry> reference_fits(const SourceModel &source, const RecordSet &rs);
std::string format_gof(const std::vector<GofEntry> &entries);

struct SimulationResult {
    RecordSet records;  ///< already rounded to the on-disk precision
    FeatureVector features;
    std::vector<GofEntry> gof;
};

SimulationResult simulate(const RunConfig &cfg);

/// Writes records.csv, features.txt, gof.txt and, when enabled, histogram SVGs. Files are
/// staged under temporary names and renamed once all of them are complete.
void write_simulation_bundle(const RunConfig &cfg, const SimulationResult &result);

struct AnalysisOptions {
    std::filesystem::path output_dir = ".";
    size_t histogram_bins = 40;
    bool svg = true;
    std::optional<std::filesystem::path> scatter_csv;
    std::string label;  ///< scatter row label; defaults to the records file stem
    std::optional<std::filesystem::path> model;
    Corrections corrections;
};

struct AnalysisResult {
    FeatureVector features;
    std::optional<Classification> classification;
};

/// Analyzes a records file: features.txt, histograms with fitted overlays, an appended
/// scatter row and, with a model, a classification.
AnalysisResult emit_report(const std::filesystem::path &records_path, const AnalysisOptions &options);

std::string format_classification(const Classification &c);

/// Trains on `dir/<Label>/*.csv`. Each file is cut into consecutive blocks of `chunk`
/// records (0 keeps whole files), and each block yields one feature vector.
ClassifierModel train_from_directory(const std::filesystem::path &dir, size_t chunk, const Corrections &corrections);

/// Feature vectors of consecutive `chunk`-record blocks; a trailing partial block is dropped.
std::vector<FeatureVector> chunk_features(const RecordSet &rs, size_t chunk, const Corrections &corrections);

/// Ensemble diagnostics for the configured interferometer over `n_draws` realizations.
std::string validate_ensemble(const RunConfig &cfg, size_t n_draws);

}  // namespace speckleq

#endif
