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

#ifndef SPECKLEQ_CONFIG_H
#define SPECKLEQ_CONFIG_H

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "speckleq/features.h"
#include "speckleq/interferometer.h"
#include "speckleq/measurement.h"
#include "speckleq/sources.h"

namespace speckleq {

/// Everything one `simulate` run needs. Defaults follow the experimental setting: 10^4
/// settings, 15 s integration, 2.5 ns coincidence window.
struct RunConfig {
    SourceModel source;
    InterferometerConfig interferometer;
    DetectorConfig detector;
    size_t n_settings = 10000;
    uint64_t master_seed = 1;
    std::filesystem::path output_dir = "out";
    size_t histogram_bins = 40;
    bool svg = true;
    Corrections corrections;
    std::vector<std::string> warnings;
};

/// Parses sections [source], [interferometer], [detector] and [run]. Every problem, syntactic
/// or semantic, is reported as a ParseError carrying the offending line.
RunConfig parse_run_config(std::istream &in, const std::string &source_name);
RunConfig load_run_config(const std::filesystem::path &path);

}  // namespace speckleq

#endif
