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

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "speckleq/config.h"
#include "speckleq/errors.h"
#include "speckleq/pipeline.h"
#include "speckleq/records_io.h"

namespace {

enum ExitCode { kOk = 0, kRuntime = 1, kInvalidInput = 2 };

struct AnalyzeArgs {
    std::string records;
    std::string output;
    std::string scatter;
    std::string label;
    std::string model;
    size_t bins = 40;
    bool no_svg = false;
    double dark = -1;
    bool accidentals = false;
    size_t bootstrap = 500;
    uint64_t bootstrap_seed = 0;
};

speckleq::Corrections corrections_of(const AnalyzeArgs &a) {
    speckleq::Corrections c;
    c.subtract_dark = a.dark >= 0;
    c.dark1 = a.dark >= 0 ? a.dark : 0;
    c.subtract_accidentals = a.accidentals;
    c.bootstrap_resamples = a.bootstrap;
    c.bootstrap_seed = a.bootstrap_seed;
    return c;
}

void add_correction_flags(CLI::App *cmd, AnalyzeArgs &a) {
    cmd->add_option("--subtract-dark", a.dark, "Dark rate (counts/s) subtracted from I1 before moments");
    cmd->add_flag("--subtract-accidentals", a.accidentals, "Use C - R per record for the coincidence visibility");
    cmd->add_option("--bootstrap", a.bootstrap, "Bootstrap resamples (0 disables)");
    cmd->add_option("--bootstrap-seed", a.bootstrap_seed, "Seed of the bootstrap resampler");
}

int run_simulate(const std::string &config_path, const std::string &output_override) {
    speckleq::RunConfig cfg = speckleq::load_run_config(config_path);
    if (!output_override.empty()) cfg.output_dir = output_override;
    for (const auto &w : cfg.warnings) std::cerr << "warning: " << w << "\n";
    auto result = speckleq::simulate(cfg);
    speckleq::write_simulation_bundle(cfg, result);
    std::cout << "wrote " << result.records.records.size() << " records to " << cfg.output_dir.string() << "\n";
    if (result.records.records.size() >= 100) std::cout << speckleq::format_features(result.features);
    return kOk;
}

int run_analyze(const AnalyzeArgs &a) {
    speckleq::AnalysisOptions opt;
    std::filesystem::path records(a.records);
    opt.output_dir = a.output.empty() ? records.parent_path() / "analysis" : std::filesystem::path(a.output);
    opt.histogram_bins = a.bins;
    opt.svg = !a.no_svg;
    if (!a.scatter.empty()) opt.scatter_csv = a.scatter;
    opt.label = a.label;
    if (!a.model.empty()) opt.model = a.model;
    opt.corrections = corrections_of(a);
    auto result = speckleq::emit_report(records, opt);
    std::cout << speckleq::format_features(result.features);
    if (result.classification) std::cout << speckleq::format_classification(*result.classification);
    return kOk;
}

int run_classify(const AnalyzeArgs &a) {
    speckleq::RecordSet rs = speckleq::read_records(std::filesystem::path(a.records));
    std::ifstream in(a.model);
    if (!in) throw speckleq::ParseError(a.model, 0, "cannot open model file");
    speckleq::ClassifierModel model = speckleq::read_model(in, a.model);
    auto f = speckleq::estimate_features(rs, corrections_of(a));
    std::cout << speckleq::format_classification(speckleq::classify(f, model));
    return kOk;
}

int run_train(const std::string &dir, const std::string &out_path, size_t chunk, const AnalyzeArgs &a) {
    auto model = speckleq::train_from_directory(dir, chunk, corrections_of(a));
    std::string tmp = out_path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        speckleq::write_model(model, out);
        if (!out) throw std::runtime_error("failed writing " + tmp);
    }
    std::filesystem::rename(tmp, out_path);
    std::cout << "trained " << model.classes.size() << " classes:";
    for (const auto &c : model.classes) std::cout << " " << speckleq::to_string(c.label) << "(" << c.count << ")";
    std::cout << "\n";
    return kOk;
}

int run_validate(const std::string &config_path, size_t draws) {
    speckleq::RunConfig cfg = speckleq::load_run_config(config_path);
    std::cout << speckleq::validate_ensemble(cfg, draws ? draws : cfg.n_settings);
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"speckleq: random-measurement characterization of quantum light"};
    app.require_subcommand(1);

    std::string config_path, output_override;
    auto *sim = app.add_subcommand("simulate", "Run an ensemble from a config file and write its report bundle");
    sim->add_option("config", config_path, "Run configuration")->required();
    sim->add_option("-o,--output", output_override, "Override [run] output");

    AnalyzeArgs an;
    auto *analyze = app.add_subcommand("analyze", "Estimate features and histograms from records.csv");
    analyze->add_option("records", an.records, "records.csv")->required();
    analyze->add_option("-o,--output", an.output, "Report directory (default: <records dir>/analysis)");
    analyze->add_option("--scatter", an.scatter, "Scatter CSV to append a feature row to");
    analyze->add_option("--label", an.label, "Label of the scatter row");
    analyze->add_option("-m,--model", an.model, "Classifier model to apply");
    analyze->add_option("--bins", an.bins, "Histogram bins")->check(CLI::Range(2, 100000));
    analyze->add_flag("--no-svg", an.no_svg, "Skip histogram SVGs");
    add_correction_flags(analyze, an);

    size_t draws = 0;
    auto *val = app.add_subcommand("validate-ensemble", "Check the configured random-matrix ensemble");
    val->add_option("config", config_path, "Run configuration")->required();
    val->add_option("--draws", draws, "Number of realizations (default: [run] N)");

    std::string train_dir, model_out;
    size_t chunk = 200;
    AnalyzeArgs tr;
    tr.bootstrap = 0;
    auto *train = app.add_subcommand("train", "Fit the classifier on <dir>/<Label>/*.csv");
    train->add_option("labeled-dir", train_dir, "Directory with one subdirectory per label")->required();
    train->add_option("-o,--output", model_out, "Model file to write")->required();
    train->add_option("--chunk", chunk, "Records per training ensemble (0: whole file)");
    add_correction_flags(train, tr);

    AnalyzeArgs cl;
    cl.bootstrap = 0;
    auto *cls = app.add_subcommand("classify", "Classify a records file with a trained model");
    cls->add_option("records", cl.records, "records.csv")->required();
    cls->add_option("-m,--model", cl.model, "Model file")->required();
    add_correction_flags(cls, cl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (*sim) return run_simulate(config_path, output_override);
        if (*analyze) return run_analyze(an);
        if (*val) return run_validate(config_path, draws);
        if (*train) return run_train(train_dir, model_out, chunk, tr);
        if (*cls) return run_classify(cl);
    } catch (const speckleq::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return kRuntime;
}
