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

#include "speckleq/interferometer.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "speckleq/errors.h"
#include "speckleq/seeding.h"
#include "speckleq/statistics.h"

namespace speckleq {

std::string to_string(Ensemble e) {
    return e == Ensemble::HaarTruncated ? "HaarTruncated" : "ComplexGaussian";
}

Ensemble ensemble_from_string(const std::string &s) {
    if (s == "HaarTruncated") return Ensemble::HaarTruncated;
    if (s == "ComplexGaussian") return Ensemble::ComplexGaussian;
    throw ValidationError("ensemble", "unknown ensemble '" + s + "'");
}

std::vector<std::string> InterferometerConfig::validate() const {
    if (m == 0 || p == 0 || n == 0) {
        throw InvalidDimension("interferometer dimensions must be positive");
    }
    if (p > m || n > m) {
        throw InvalidDimension("need p <= m and n <= m (m=" + std::to_string(m) + ", p=" + std::to_string(p) +
                               ", n=" + std::to_string(n) + ")");
    }
    if (n_spectral_bins == 0) {
        throw InvalidDimension("n_spectral_bins must be positive");
    }
    std::vector<std::string> warnings;
    if (ensemble == Ensemble::ComplexGaussian &&
        static_cast<double>(p) > std::pow(static_cast<double>(m), 1.0 / 6.0)) {
        warnings.push_back("p=" + std::to_string(p) + " exceeds m^(1/6); truncation correlations are not negligible");
    }
    return warnings;
}

namespace {

// Standard complex Ginibre entries (E|g|^2 = 1), filled column by column so that the first
// n columns do not depend on how many columns are drawn.
ComplexMatrix ginibre(size_t rows, size_t cols, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(rows, cols);
    for (Eigen::Index c = 0; c < g.cols(); c++) {
        for (Eigen::Index r = 0; r < g.rows(); r++) {
            double re = normal(rng);
            double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    }
    return g;
}

ComplexMatrix orthonormalize_with_phase_fix(const ComplexMatrix &g) {
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index k = 0; k < g.cols(); k++) {
        Complex d = r(k, k);
        double a = std::abs(d);
        q.col(k) *= a > 0 ? d / a : Complex(1.0);
    }
    return q;
}

void check_indices(std::span<const size_t> idx, size_t bound, const char *what) {
    std::set<size_t> seen;
    for (size_t i : idx) {
        if (i >= bound) {
            throw InvalidSelection(std::string(what) + " index " + std::to_string(i) + " out of range " +
                                   std::to_string(bound));
        }
        if (!seen.insert(i).second) {
            throw InvalidSelection(std::string(what) + " index " + std::to_string(i) + " repeated");
        }
    }
}

}  // namespace

ComplexMatrix sample_haar_unitary(size_t m, uint64_t seed) {
    if (m == 0) {
        throw InvalidDimension("Haar unitary of dimension 0");
    }
    return orthonormalize_with_phase_fix(ginibre(m, m, seed));
}

ComplexMatrix sample_haar_columns(size_t m, size_t n, uint64_t seed) {
    if (m == 0 || n == 0 || n > m) {
        throw InvalidDimension("Haar columns need 0 < n <= m");
    }
    return orthonormalize_with_phase_fix(ginibre(m, n, seed));
}

TransmissionMatrix truncate_unitary(const ComplexMatrix &u, std::span<const size_t> out_rows,
                                    std::span<const size_t> in_cols) {
    if (out_rows.empty() || in_cols.empty()) {
        throw InvalidSelection("empty row or column selection");
    }
    check_indices(out_rows, static_cast<size_t>(u.rows()), "row");
    check_indices(in_cols, static_cast<size_t>(u.cols()), "column");
    TransmissionMatrix tm;
    tm.entries.resize(static_cast<Eigen::Index>(out_rows.size()), static_cast<Eigen::Index>(in_cols.size()));
    for (size_t r = 0; r < out_rows.size(); r++) {
        for (size_t c = 0; c < in_cols.size(); c++) {
            tm.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                u(static_cast<Eigen::Index>(out_rows[r]), static_cast<Eigen::Index>(in_cols[c]));
        }
    }
    tm.variance_scale = 1.0 / static_cast<double>(u.rows());
    return tm;
}

TransmissionMatrix sample_gaussian_tm(size_t p, size_t n, size_t m, uint64_t seed) {
    if (p == 0 || n == 0 || m == 0) {
        throw InvalidDimension("Gaussian transmission matrix with a zero dimension");
    }
    TransmissionMatrix tm;
    tm.entries = ginibre(p, n, seed) / std::sqrt(static_cast<double>(m));
    tm.variance_scale = 1.0 / static_cast<double>(m);
    return tm;
}

TransmissionMatrix sample_tm(const InterferometerConfig &config, uint64_t seed) {
    if (config.ensemble == Ensemble::ComplexGaussian) {
        return sample_gaussian_tm(config.p, config.n, config.m, seed);
    }
    if (config.p > config.m || config.n > config.m) {
        throw InvalidDimension("truncation larger than the unitary");
    }
    ComplexMatrix cols = sample_haar_columns(config.m, config.n, seed);
    TransmissionMatrix tm;
    tm.entries = cols.topRows(static_cast<Eigen::Index>(config.p));
    tm.variance_scale = 1.0 / static_cast<double>(config.m);
    return tm;
}

SpectralTransmission sample_spectral_tm(const InterferometerConfig &config, uint64_t seed) {
    if (config.n_spectral_bins == 0) {
        throw InvalidDimension("n_spectral_bins must be positive");
    }
    SpectralTransmission st;
    st.bins.reserve(config.n_spectral_bins);
    double mid = 0.5 * static_cast<double>(config.n_spectral_bins - 1);
    for (size_t b = 0; b < config.n_spectral_bins; b++) {
        st.bins.push_back(sample_tm(config, derive_seed(seed, {b})));
        st.bin_centers_nm.push_back(config.center_wavelength_nm +
                                    (static_cast<double>(b) - mid) * config.spectral_bin_width_nm);
    }
    return st;
}

EnsembleReport ensemble_stats(std::span<const TransmissionMatrix> tms) {
    if (tms.size() < 100) {
        throw InsufficientData("ensemble_stats needs at least 100 matrices, got " + std::to_string(tms.size()));
    }
    const auto rows = tms[0].entries.rows();
    const auto cols = tms[0].entries.cols();
    const size_t k = static_cast<size_t>(rows * cols);
    for (const auto &tm : tms) {
        if (tm.entries.rows() != rows || tm.entries.cols() != cols) {
            throw InvalidDimension("ensemble_stats: matrices differ in shape");
        }
    }
    const double scale = tms[0].variance_scale;

    std::vector<double> amplitudes;
    std::vector<double> phases;
    amplitudes.reserve(tms.size() * k);
    phases.reserve(tms.size() * k);
    // Per-entry variables: Re, Im, |t|^2.
    std::vector<std::vector<double>> vars(3 * k, std::vector<double>(tms.size()));
    for (size_t s = 0; s < tms.size(); s++) {
        for (Eigen::Index c = 0; c < cols; c++) {
            for (Eigen::Index r = 0; r < rows; r++) {
                Complex t = tms[s].entries(r, c);
                size_t e = static_cast<size_t>(c * rows + r);
                amplitudes.push_back(std::abs(t));
                phases.push_back(std::arg(t));
                vars[3 * e][s] = t.real();
                vars[3 * e + 1][s] = t.imag();
                vars[3 * e + 2][s] = std::norm(t);
            }
        }
    }

    EnsembleReport report;
    report.n_samples = tms.size();
    report.amplitude_gof = ks_distance(amplitudes, [scale](double a) { return 1.0 - std::exp(-a * a / scale); });
    report.phase_gof = ks_distance(phases, [](double th) { return (th + std::numbers::pi) / (2 * std::numbers::pi); });

    double worst = 0;
    for (size_t i = 0; i < vars.size(); i++) {
        for (size_t j = i + 1; j < vars.size(); j++) {
            auto r = pearson(vars[i], vars[j]);
            if (!r) {
                return report;
            }
            worst = std::max(worst, std::abs(*r));
        }
    }
    report.entry_correlation_max = worst;
    return report;
}

double unitarity_defect(const ComplexMatrix &u) {
    ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

}  // namespace speckleq
