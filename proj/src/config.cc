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

#include "speckleq/config.h"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "speckleq/errors.h"
#include "speckleq/ini.h"

namespace speckleq {

namespace {

// Where a make_source field lives in the config file.
std::pair<std::string, std::string> locate_source_field(const std::string &field) {
    if (field == "x") return {"source", "x"};
    if (field == "input_modes") return {"source", "modes"};
    if (field == "n_spectral_bins") return {"interferometer", "bins"};
    if (field == "d_incoherent") return {"source", "d"};
    if (field == "d_mixture") return {"source", "D"};
    if (field == "jsa" || field == "pump_bandwidth") return {"source", "jsa_pump_nm"};
    if (field == "phasematch_bandwidth") return {"source", "jsa_phasematch_nm"};
    if (field == "grid_size") return {"source", "jsa_grid"};
    return {"source", "kind"};
}

std::vector<size_t> default_modes(const SourceModel &s) {
    size_t count = 2;
    switch (s.kind) {
        case SourceKind::HeraldedSinglePhoton:
        case SourceKind::TwoPhotonFock:
            count = 1;
            break;
        case SourceKind::IncoherentMixture:
            count = s.d_incoherent;
            break;
        case SourceKind::MixedBiphoton:
            count = 2 * s.d_mixture;
            break;
        case SourceKind::IncoherentDispersive:
            count = s.n_spectral_bins ? std::max<size_t>(1, s.d_incoherent / s.n_spectral_bins) : 1;
            break;
        default:
            break;
    }
    std::vector<size_t> modes(count);
    std::iota(modes.begin(), modes.end(), 0);
    return modes;
}

void parse_source(const IniDocument &doc, RunConfig &cfg) {
    const std::string sec = "source";
    if (!doc.has_section(sec)) {
        throw ParseError(doc.source_name(), 0, "missing [source] section");
    }
    doc.reject_unknown_keys(sec, {"kind", "modes", "x", "delay", "coherence_length", "d", "D", "dephasing_mode",
                                  "jsa_pump_nm", "jsa_phasematch_nm", "jsa_grid"});
    SourceModel &s = cfg.source;
    auto kind = doc.get_string(sec, "kind");
    if (!kind) doc.fail(sec, "kind", "missing source kind");
    try {
        s.kind = source_kind_from_string(*kind);
    } catch (const std::exception &e) {
        doc.fail(sec, "kind", e.what());
    }
    if (auto v = doc.get_uint(sec, "d")) s.d_incoherent = static_cast<size_t>(*v);
    if (auto v = doc.get_uint(sec, "D")) s.d_mixture = static_cast<size_t>(*v);

    auto x = doc.get_double(sec, "x");
    auto delay = doc.get_double(sec, "delay");
    auto coherence = doc.get_double(sec, "coherence_length");
    if (x && (delay || coherence)) doc.fail(sec, "delay", "give either x or delay/coherence_length, not both");
    if (x) s.x = *x;
    if (delay || coherence) {
        if (!delay || !coherence) doc.fail(sec, delay ? "delay" : "coherence_length", "delay needs coherence_length");
        try {
            s.x = indistinguishability_from_delay(*delay, *coherence);
        } catch (const ValidationError &e) {
            doc.fail(sec, "coherence_length", e.what());
        }
    }
    if (auto v = doc.get_string(sec, "dephasing_mode")) {
        try {
            s.dephasing_mode = dephasing_mode_from_string(*v);
        } catch (const std::exception &e) {
            doc.fail(sec, "dephasing_mode", e.what());
        }
    }
    auto pump = doc.get_double(sec, "jsa_pump_nm");
    auto pm = doc.get_double(sec, "jsa_phasematch_nm");
    auto grid = doc.get_uint(sec, "jsa_grid");
    if (pump || pm || grid) {
        if (!pump || !pm) doc.fail(sec, pump ? "jsa_phasematch_nm" : "jsa_pump_nm", "both JSA bandwidths are required");
        try {
            s.jsa = jsa_gaussian(*pump, *pm, cfg.interferometer.center_wavelength_nm,
                                 grid ? static_cast<size_t>(*grid) : 256);
        } catch (const ValidationError &e) {
            auto [where, key] = locate_source_field(e.field());
            doc.fail(where, key, e.what());
        }
    }
}

void parse_interferometer(const IniDocument &doc, RunConfig &cfg) {
    const std::string sec = "interferometer";
    doc.reject_unknown_keys(sec, {"m", "p", "n", "ensemble", "bins", "center_nm", "bin_width_nm"});
    InterferometerConfig &ic = cfg.interferometer;
    if (auto v = doc.get_uint(sec, "m")) ic.m = static_cast<size_t>(*v);
    if (auto v = doc.get_uint(sec, "p")) ic.p = static_cast<size_t>(*v);
    if (auto v = doc.get_uint(sec, "bins")) ic.n_spectral_bins = static_cast<size_t>(*v);
    if (auto v = doc.get_double(sec, "center_nm")) ic.center_wavelength_nm = *v;
    if (auto v = doc.get_double(sec, "bin_width_nm")) ic.spectral_bin_width_nm = *v;
    if (auto v = doc.get_string(sec, "ensemble")) {
        try {
            ic.ensemble = ensemble_from_string(*v);
        } catch (const std::exception &e) {
            doc.fail(sec, "ensemble", e.what());
        }
    }
}

void parse_detector(const IniDocument &doc, RunConfig &cfg) {
    const std::string sec = "detector";
    doc.reject_unknown_keys(sec, {"tau_c", "T", "singles_rate", "pair_rate", "dark1", "dark2", "noise"});
    DetectorConfig &d = cfg.detector;
    if (auto v = doc.get_double(sec, "tau_c")) d.tau_c = *v;
    if (auto v = doc.get_double(sec, "T")) d.T = *v;
    if (auto v = doc.get_double(sec, "singles_rate")) d.singles_rate = *v;
    if (auto v = doc.get_double(sec, "pair_rate")) d.pair_rate = *v;
    if (auto v = doc.get_double(sec, "dark1")) d.dark1 = *v;
    if (auto v = doc.get_double(sec, "dark2")) d.dark2 = *v;
    if (auto v = doc.get_string(sec, "noise")) {
        try {
            d.noise_mode = noise_mode_from_string(*v);
        } catch (const std::exception &e) {
            doc.fail(sec, "noise", e.what());
        }
    }
    try {
        d.validate();
    } catch (const ValidationError &e) {
        doc.fail(sec, e.field(), e.what());
    }
}

void parse_run(const IniDocument &doc, RunConfig &cfg) {
    const std::string sec = "run";
    doc.reject_unknown_keys(sec, {"N", "seed", "output", "histogram_bins", "svg", "bootstrap", "bootstrap_seed",
                                  "subtract_dark", "subtract_accidentals"});
    if (auto v = doc.get_uint(sec, "N")) cfg.n_settings = static_cast<size_t>(*v);
    if (cfg.n_settings == 0) doc.fail(sec, "N", "at least one setting is required");
    if (auto v = doc.get_uint(sec, "seed")) cfg.master_seed = *v;
    if (auto v = doc.get_string(sec, "output")) cfg.output_dir = *v;
    if (auto v = doc.get_uint(sec, "histogram_bins")) cfg.histogram_bins = static_cast<size_t>(*v);
    if (cfg.histogram_bins < 2) doc.fail(sec, "histogram_bins", "need at least 2 bins");
    if (auto v = doc.get_bool(sec, "svg")) cfg.svg = *v;
    if (auto v = doc.get_uint(sec, "bootstrap")) cfg.corrections.bootstrap_resamples = static_cast<size_t>(*v);
    if (auto v = doc.get_uint(sec, "bootstrap_seed")) cfg.corrections.bootstrap_seed = *v;
    if (auto v = doc.get_bool(sec, "subtract_dark")) cfg.corrections.subtract_dark = *v;
    if (auto v = doc.get_bool(sec, "subtract_accidentals")) cfg.corrections.subtract_accidentals = *v;
    cfg.corrections.dark1 = cfg.detector.dark1;
}

}  // namespace

RunConfig parse_run_config(std::istream &in, const std::string &source_name) {
    IniDocument doc = IniDocument::parse(in, source_name);
    for (const auto &s : doc.sections()) {
        if (s != "source" && s != "interferometer" && s != "detector" && s != "run") {
            throw ParseError(source_name, doc.line_of(s), "unknown section [" + s + "]");
        }
    }
    RunConfig cfg;
    parse_interferometer(doc, cfg);
    parse_detector(doc, cfg);
    parse_source(doc, cfg);
    parse_run(doc, cfg);

    SourceModel &s = cfg.source;
    s.n_spectral_bins = cfg.interferometer.n_spectral_bins;
    if (auto modes = doc.get_indices("source", "modes")) {
        s.input_modes = *modes;
    } else {
        s.input_modes = default_modes(s);
    }
    try {
        s = make_source(s);
    } catch (const ValidationError &e) {
        auto [where, key] = locate_source_field(e.field());
        doc.fail(where, key, e.what());
    }

    size_t needed = *std::max_element(s.input_modes.begin(), s.input_modes.end()) + 1;
    if (auto n = doc.get_uint("interferometer", "n")) {
        cfg.interferometer.n = static_cast<size_t>(*n);
        if (cfg.interferometer.n < needed) {
            doc.fail("interferometer", "n", "source uses input mode " + std::to_string(needed - 1) +
                                                " but only " + std::to_string(cfg.interferometer.n) + " inputs exist");
        }
    } else {
        cfg.interferometer.n = std::max<size_t>(needed, 2);
    }
    if (cfg.interferometer.p < 2) doc.fail("interferometer", "p", "two monitored outputs are required");
    try {
        cfg.warnings = cfg.interferometer.validate();
    } catch (const InvalidDimension &e) {
        doc.fail("interferometer", doc.find("interferometer", "m") ? "m" : "n", e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open config file");
    }
    return parse_run_config(in, path.string());
}

}  // namespace speckleq
