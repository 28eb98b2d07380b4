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

#include "speckleq/pipeline.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "speckleq/errors.h"
#include "speckleq/records_io.h"
#include "speckleq/seeding.h"
#include "speckleq/statistics.h"
#include "speckleq/svg.h"

namespace speckleq {

namespace fs = std::filesystem;

namespace {

struct Columns {
    std::vector<double> I1, C, R, g2;
};

Columns columns_of(const RecordSet &rs) {
    Columns c;
    for (const auto &r : rs.records) {
        c.I1.push_back(r.I1);
        c.C.push_back(r.C);
        c.R.push_back(r.R);
        if (r.g2_valid) c.g2.push_back(r.g2);
    }
    return c;
}

GofEntry fit(const std::string &quantity, const std::vector<double> &samples, const AnalyticPdf &pdf) {
    GofEntry e{quantity, pdf, std::nullopt, std::nullopt, ""};
    try {
        e.ks = goodness_of_fit(samples, pdf, GofKind::KS);
        e.chi_square = goodness_of_fit(samples, pdf, GofKind::ChiSquare);
    } catch (const std::exception &ex) {
        e.ks.reset();
        e.chi_square.reset();
        e.skipped = ex.what();
    }
    return e;
}

std::vector<double> normalized(const std::vector<double> &xs) {
    double mu = xs.empty() ? 0.0 : mean(xs);
    if (!(mu > 0)) return {};
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(x / mu);
    return out;
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) return 1.0;
    size_t k = std::min(xs.size() - 1, static_cast<size_t>(q * static_cast<double>(xs.size())));
    std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end());
    return xs[k];
}

std::vector<std::pair<double, double>> curve(const AnalyticPdf &pdf, double lo, double hi) {
    std::vector<std::pair<double, double>> pts;
    const int n = 240;
    for (int i = 0; i <= n; i++) {
        double x = lo + (hi - lo) * (i + 0.5) / (n + 1);
        double y = pdf.density(x);
        if (std::isfinite(y)) pts.emplace_back(x, y);
    }
    return pts;
}

std::string histogram_svg(const std::string &title, const std::string &xlabel, const std::vector<double> &samples,
                          size_t bins, double hi, const std::vector<AnalyticPdf> &overlays) {
    SvgPlot plot(title, xlabel, "probability density");
    plot.set_bars(make_histogram(samples, bins, 0.0, hi), "simulated / measured");
    for (const auto &pdf : overlays) {
        try {
            pdf.validate();
            plot.add_line(curve(pdf, 0.0, hi), pdf.describe());
        } catch (const std::exception &) {
            // Parameters outside the family's domain: draw the data alone.
        }
    }
    return plot.render();
}

using FileSet = std::vector<std::pair<std::string, std::string>>;

// Writes every file as name.tmp, then renames; nothing final appears unless all writes succeed.
void commit_files(const fs::path &dir, const FileSet &files) {
    fs::create_directories(dir);
    std::vector<fs::path> staged;
    try {
        for (const auto &[name, content] : files) {
            fs::path tmp = dir / (name + ".tmp");
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << content;
            out.close();
            if (!out) throw std::runtime_error("failed writing " + tmp.string());
            staged.push_back(tmp);
        }
    } catch (...) {
        for (const auto &p : staged) fs::remove(p);
        throw;
    }
    for (size_t i = 0; i < files.size(); i++) {
        fs::rename(staged[i], dir / files[i].first);
    }
}

void add_histograms(FileSet &files, const Columns &c, size_t bins, const std::vector<AnalyticPdf> &intensity,
                    const std::vector<AnalyticPdf> &coincidence, const std::vector<AnalyticPdf> &g2) {
    auto in = normalized(c.I1);
    if (!in.empty()) {
        files.emplace_back("hist_intensity.svg", histogram_svg("Output intensity", "I1 / mean(I1)", in, bins,
                                                               std::max(2.0, quantile(in, 0.995)), intensity));
    }
    auto cn = normalized(c.C);
    if (!cn.empty()) {
        files.emplace_back("hist_coincidence.svg", histogram_svg("Two-fold coincidences", "C / mean(C)", cn, bins,
                                                                 std::max(2.0, quantile(cn, 0.995)), coincidence));
    }
    if (c.g2.size() >= 2) {
        double mu = mean(c.g2);
        double hi = std::max(2.2 * mu, quantile(c.g2, 0.995));
        if (hi > 0) {
            files.emplace_back("hist_g2.svg", histogram_svg("Normalized correlation", "g2", c.g2, bins, hi, g2));
        }
    }
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string provenance_text(const RunConfig &cfg) {
    const auto &s = cfg.source;
    const auto &ic = cfg.interferometer;
    const auto &d = cfg.detector;
    std::ostringstream o;
    o << "# source = " << to_string(s.kind) << " modes=";
    for (size_t i = 0; i < s.input_modes.size(); i++) o << (i ? "," : "") << s.input_modes[i];
    o << " x=" << fmt("%.6g", s.x) << " d=" << s.d_incoherent << " D=" << s.d_mixture
      << " bins=" << s.n_spectral_bins << " dephasing=" << to_string(s.dephasing_mode) << "\n";
    o << "# interferometer = " << to_string(ic.ensemble) << " m=" << ic.m << " p=" << ic.p << " n=" << ic.n << "\n";
    o << "# detector = " << to_string(d.noise_mode) << " tau_c=" << fmt("%.6g", d.tau_c) << " T=" << fmt("%.6g", d.T)
      << " B=" << fmt("%.6g", d.singles_rate) << " B_p=" << fmt("%.6g", d.pair_rate)
      << " dark1=" << fmt("%.6g", d.dark1) << " dark2=" << fmt("%.6g", d.dark2) << "\n";
    o << "# eta_s = " << fmt("%.6g", d.eta_s()) << "\n";
    o << "# N = " << cfg.n_settings << " seed = " << cfg.master_seed << "\n";
    for (const auto &w : cfg.warnings) o << "# warning: " << w << "\n";
    return o.str();
}

}  // namespace

std::vector<GofEntry> reference_fits(const SourceModel &source, const RecordSet &rs) {
    const Columns c = columns_of(rs);
    const double d = nominal_mode_count(source);
    const auto in = normalized(c.I1);
    const auto cn = normalized(c.C);
    const auto rn = normalized(c.R);
    const double g2_mean = c.g2.size() >= 2 ? mean(c.g2) : 1.0;

    std::vector<GofEntry> out;
    out.push_back(fit("I1/mean", in, {PdfFamily::IntensityGamma, d, 1, NegLogNormalization::Exact}));
    switch (source.kind) {
        case SourceKind::HeraldedSinglePhoton:
        case SourceKind::IncoherentMixture:
        case SourceKind::IncoherentDispersive:
            out.push_back(fit("R/mean", rn, {PdfFamily::AccidentalProduct, d, 1, NegLogNormalization::Exact}));
            break;
        case SourceKind::TwoPhotonFock:
            out.push_back(fit("C/mean", cn, {PdfFamily::AccidentalProduct, 1, 1, NegLogNormalization::Exact}));
            break;
        case SourceKind::BiphotonPair:
            out.push_back(fit("C/mean", cn, {PdfFamily::CoincidenceK, 2, 1, NegLogNormalization::Exact}));
            out.push_back(fit("g2", c.g2, {PdfFamily::G2Uniform, 1, g2_mean, NegLogNormalization::Exact}));
            out.push_back(fit("g2", c.g2, {PdfFamily::G2NegLog, 1, g2_mean, NegLogNormalization::Exact}));
            break;
        case SourceKind::Noon2:
            out.push_back(fit("g2", c.g2, {PdfFamily::G2NegLog, 1, g2_mean, NegLogNormalization::Exact}));
            break;
        case SourceKind::MixedBiphoton:
        case SourceKind::SpectralBiphoton:
            out.push_back(fit("R/mean", rn, {PdfFamily::AccidentalProduct, d / 2, 1, NegLogNormalization::Exact}));
            break;
    }
    return out;
}

std::string format_gof(const std::vector<GofEntry> &entries) {
    std::string out = "# quantity | reference | test statistic p-value n [dof]\n";
    for (const auto &e : entries) {
        std::string head = e.quantity + " | " + e.pdf.describe() + " | ";
        if (!e.ks) {
            out += head + "skipped: " + e.skipped + "\n";
            continue;
        }
        char buf[256];
        std::snprintf(buf, sizeof buf, "KS %.6g %.4g %zu\n", e.ks->statistic, e.ks->p_value, e.ks->n_samples);
        out += head + buf;
        std::snprintf(buf, sizeof buf, "ChiSquare %.6g %.4g %zu %zu\n", e.chi_square->statistic, e.chi_square->p_value,
                      e.chi_square->n_samples, e.chi_square->degrees_of_freedom);
        out += head + buf;
    }
    return out;
}

SimulationResult simulate(const RunConfig &cfg) {
    SimulationResult result;
    RecordSet raw = run_ensemble(cfg.source, cfg.interferometer, cfg.detector, cfg.n_settings, cfg.master_seed);
    result.records = quantize_records(raw);
    if (result.records.records.size() >= 100) {
        result.features = estimate_features(result.records, cfg.corrections);
    }
    result.gof = reference_fits(cfg.source, result.records);
    return result;
}

void write_simulation_bundle(const RunConfig &cfg, const SimulationResult &result) {
    FileSet files;
    std::ostringstream records;
    write_records(result.records, records);
    files.emplace_back("records.csv", records.str());

    std::string features = provenance_text(cfg);
    if (result.records.records.size() >= 100) {
        features += format_features(result.features);
    } else {
        features += "# fewer than 100 records: features not estimated\n";
    }
    files.emplace_back("features.txt", features);
    files.emplace_back("gof.txt", format_gof(result.gof));

    if (cfg.svg) {
        const Columns c = columns_of(result.records);
        const double d = nominal_mode_count(cfg.source);
        std::vector<AnalyticPdf> coincidence;
        if (cfg.source.kind == SourceKind::BiphotonPair || cfg.source.kind == SourceKind::MixedBiphoton ||
            cfg.source.kind == SourceKind::SpectralBiphoton) {
            coincidence.push_back({PdfFamily::CoincidenceK, d, 1, NegLogNormalization::Exact});
        }
        coincidence.push_back({PdfFamily::AccidentalProduct, std::max(1.0, d / 2), 1, NegLogNormalization::Exact});
        std::vector<AnalyticPdf> g2;
        if (c.g2.size() >= 2) {
            double mu = mean(c.g2);
            g2 = {{PdfFamily::G2Uniform, 1, mu, NegLogNormalization::Exact},
                  {PdfFamily::G2NegLog, 1, mu, NegLogNormalization::Exact},
                  {PdfFamily::G2NegLog, 1, mu, NegLogNormalization::PiPrefactor}};
        }
        add_histograms(files, c, cfg.histogram_bins, {{PdfFamily::IntensityGamma, d, 1, NegLogNormalization::Exact}},
                       coincidence, g2);
    }
    commit_files(cfg.output_dir, files);
}

AnalysisResult emit_report(const fs::path &records_path, const AnalysisOptions &options) {
    RecordSet rs = read_records(records_path);
    std::optional<ClassifierModel> model;
    if (options.model) {
        std::ifstream in(*options.model);
        if (!in) throw ParseError(options.model->string(), 0, "cannot open model file");
        model = read_model(in, options.model->string());
    }

    AnalysisResult result;
    result.features = estimate_features(rs, options.corrections);
    if (model) result.classification = classify(result.features, *model);

    FileSet files;
    std::string text = format_features(result.features);
    if (result.classification) text += format_classification(*result.classification);
    files.emplace_back("features.txt", text);

    if (options.svg) {
        const Columns c = columns_of(rs);
        const FeatureVector &f = result.features;
        std::vector<AnalyticPdf> intensity, coincidence, g2;
        if (f.d_hat) intensity.push_back({PdfFamily::IntensityGamma, f.d_hat->value, 1, NegLogNormalization::Exact});
        if (f.V_C.value > 1) {
            coincidence.push_back(
                {PdfFamily::CoincidenceK, std::max(1.0, 2.0 / (f.V_C.value - 1.0)), 1, NegLogNormalization::Exact});
        }
        if (f.mean_g2 && f.mean_g2->value > 0) {
            double mu = f.mean_g2->value;
            g2 = {{PdfFamily::G2Uniform, 1, mu, NegLogNormalization::Exact},
                  {PdfFamily::G2NegLog, 1, mu, NegLogNormalization::Exact}};
        }
        add_histograms(files, c, options.histogram_bins, intensity, coincidence, g2);
    }
    commit_files(options.output_dir, files);

    if (options.scatter_csv) {
        bool fresh = !fs::exists(*options.scatter_csv) || fs::file_size(*options.scatter_csv) == 0;
        std::ofstream out(*options.scatter_csv, std::ios::app);
        if (!out) throw std::runtime_error("cannot append to " + options.scatter_csv->string());
        if (fresh) out << "label,n_records,V_I,V_C,V_g2,mean_g2,d_hat,purity,corr_C_g2\n";
        const FeatureVector &f = result.features;
        auto opt = [](const std::optional<Estimate> &e) { return e ? fmt("%.10g", e->value) : std::string(); };
        std::string label = options.label.empty() ? records_path.stem().string() : options.label;
        if (label == "records") label = records_path.parent_path().filename().string();
        out << label << ',' << f.n_records << ',' << fmt("%.10g", f.V_I.value) << ',' << fmt("%.10g", f.V_C.value)
            << ',' << opt(f.V_g2) << ',' << opt(f.mean_g2) << ',' << opt(f.d_hat) << ','
            << fmt("%.10g", f.purity.value) << ',' << opt(f.corr_C_g2) << '\n';
    }
    return result;
}

std::string format_classification(const Classification &c) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "classification = %s score=%.4f via=%s\n", to_string(c.label).c_str(), c.score,
                  c.from_rule ? "rule" : "centroid");
    return buf;
}

std::vector<FeatureVector> chunk_features(const RecordSet &rs, size_t chunk, const Corrections &corrections) {
    const size_t n = rs.records.size();
    if (chunk == 0) chunk = n;
    std::vector<FeatureVector> out;
    for (size_t begin = 0; begin + chunk <= n; begin += chunk) {
        RecordSet part;
        part.records.assign(rs.records.begin() + static_cast<std::ptrdiff_t>(begin),
                            rs.records.begin() + static_cast<std::ptrdiff_t>(begin + chunk));
        out.push_back(estimate_features(part, corrections));
    }
    return out;
}

ClassifierModel train_from_directory(const fs::path &dir, size_t chunk, const Corrections &corrections) {
    if (!fs::is_directory(dir)) {
        throw ParseError(dir.string(), 0, "not a directory");
    }
    std::vector<fs::path> class_dirs;
    for (const auto &entry : fs::directory_iterator(dir)) {
        if (entry.is_directory()) class_dirs.push_back(entry.path());
    }
    std::sort(class_dirs.begin(), class_dirs.end());
    std::vector<std::pair<StateClass, FeatureVector>> labeled;
    for (const auto &cd : class_dirs) {
        StateClass label;
        try {
            label = state_class_from_string(cd.filename().string());
        } catch (const ValidationError &e) {
            throw ParseError(cd.string(), 0, e.what());
        }
        std::vector<fs::path> files;
        for (const auto &entry : fs::directory_iterator(cd)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto &f : files) {
            for (auto &fv : chunk_features(read_records(f), chunk, corrections)) {
                labeled.emplace_back(label, std::move(fv));
            }
        }
    }
    if (labeled.empty()) {
        throw TrainingError("no labeled records found under " + dir.string());
    }
    return fit_model(labeled);
}

std::string validate_ensemble(const RunConfig &cfg, size_t n_draws) {
    if (n_draws < 100) {
        throw InsufficientData("ensemble validation needs at least 100 draws");
    }
    const InterferometerConfig &ic = cfg.interferometer;
    std::vector<TransmissionMatrix> tms;
    tms.reserve(n_draws);
    for (size_t k = 0; k < n_draws; k++) {
        tms.push_back(sample_tm(ic, derive_seed(cfg.master_seed, {stream::kMatrix, k})));
    }
    EnsembleReport rep = ensemble_stats(tms);

    InterferometerConfig other = ic;
    other.ensemble = ic.ensemble == Ensemble::HaarTruncated ? Ensemble::ComplexGaussian : Ensemble::HaarTruncated;
    std::vector<double> mine, theirs;
    for (size_t k = 0; k < n_draws; k++) {
        TransmissionMatrix t = sample_tm(other, derive_seed(cfg.master_seed ^ 0x5bd1e995ULL, {stream::kMatrix, k}));
        for (Eigen::Index i = 0; i < t.entries.size(); i++) {
            theirs.push_back(std::abs(t.entries(i)));
            mine.push_back(std::abs(tms[k].entries(i)));
        }
    }
    double cross = ks_distance_two_sample(mine, theirs);

    std::ostringstream o;
    o << "ensemble = " << to_string(ic.ensemble) << "\n";
    o << "m = " << ic.m << "\np = " << ic.p << "\nn = " << ic.n << "\ndraws = " << n_draws << "\n";
    o << "amplitude_ks_rayleigh = " << fmt("%.6g", rep.amplitude_gof) << "\n";
    o << "phase_ks_uniform = " << fmt("%.6g", rep.phase_gof) << "\n";
    if (rep.entry_correlation_max) {
        o << "entry_correlation_max = " << fmt("%.6g", *rep.entry_correlation_max) << "\n";
    } else {
        o << "entry_correlation_max = degenerate\n";
    }
    o << "amplitude_ks_vs_" << to_string(other.ensemble) << " = " << fmt("%.6g", cross) << "\n";
    if (ic.ensemble == Ensemble::HaarTruncated) {
        double worst = 0;
        for (size_t k = 0; k < std::min<size_t>(3, n_draws); k++) {
            worst = std::max(worst, unitarity_defect(sample_haar_unitary(ic.m, derive_seed(cfg.master_seed, {k}))));
        }
        o << "unitarity_defect_max = " << fmt("%.3g", worst) << "\n";
    }
    for (const auto &w : cfg.warnings) o << "warning = " << w << "\n";
    return o.str();
}

}  // namespace speckleq
