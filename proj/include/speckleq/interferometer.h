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

#ifndef SPECKLEQ_INTERFEROMETER_H
#define SPECKLEQ_INTERFEROMETER_H

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace speckleq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class Ensemble { HaarTruncated, ComplexGaussian };

std::string to_string(Ensemble e);
Ensemble ensemble_from_string(const std::string &s);

struct InterferometerConfig {
    size_t m = 400;  ///< propagating modes of the random medium
    size_t p = 2;    ///< monitored output modes
    size_t n = 2;    ///< input modes
    Ensemble ensemble = Ensemble::ComplexGaussian;
    size_t n_spectral_bins = 1;
    uint64_t master_seed = 0;
    double center_wavelength_nm = 810.0;
    double spectral_bin_width_nm = 0.22;

    /// Throws InvalidDimension on violated bounds. Returns non-fatal warnings, e.g. when the
    /// i.i.d. Gaussian approximation is used outside p <= m^(1/6).
    std::vector<std::string> validate() const;
};

/// A p x n block of a random transmission operator. Row r is output r, column k is input k.
struct TransmissionMatrix {
    ComplexMatrix entries;
    double variance_scale = 1.0;  ///< expected |t|^2 per entry, 1/m

    size_t rows() const { return static_cast<size_t>(entries.rows()); }
    size_t cols() const { return static_cast<size_t>(entries.cols()); }
    Complex operator()(size_t r, size_t c) const { return entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)); }
};

struct SpectralTransmission {
    std::vector<TransmissionMatrix> bins;
    std::vector<double> bin_centers_nm;
};

struct EnsembleReport {
    double amplitude_gof = 0;  ///< KS distance of pooled |t| against Rayleigh
    double phase_gof = 0;      ///< KS distance of pooled arg t against uniform on (-pi, pi]
    /// Max |corr| among Re t, Im t, |t|^2 of distinct entry variables. Empty when some
    /// variable has zero spread (degenerate ensemble).
    std::optional<double> entry_correlation_max;
    size_t n_samples = 0;
};

/// Haar-distributed m x m unitary: QR of a complex Ginibre matrix with the diagonal phases
/// of R moved into Q.
ComplexMatrix sample_haar_unitary(size_t m, uint64_t seed);

/// The first n columns of sample_haar_unitary(m, seed), computed with an m x n thin QR.
ComplexMatrix sample_haar_columns(size_t m, size_t n, uint64_t seed);

TransmissionMatrix truncate_unitary(const ComplexMatrix &u, std::span<const size_t> out_rows,
                                    std::span<const size_t> in_cols);

/// i.i.d. circular complex Gaussian entries with E|t|^2 = 1/m.
TransmissionMatrix sample_gaussian_tm(size_t p, size_t n, size_t m, uint64_t seed);

/// One monochromatic realization from the configured ensemble (outputs 0..p-1, inputs 0..n-1).
TransmissionMatrix sample_tm(const InterferometerConfig &config, uint64_t seed);

/// n_spectral_bins independent realizations; bin b uses derive_seed(seed, {b}).
SpectralTransmission sample_spectral_tm(const InterferometerConfig &config, uint64_t seed);

/// Requires at least 100 matrices of identical shape.
EnsembleReport ensemble_stats(std::span<const TransmissionMatrix> tms);

/// max |U^dagger U - I| over entries.
double unitarity_defect(const ComplexMatrix &u);

}  // namespace speckleq

#endif
