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

#include "speckleq/sources.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "speckleq/errors.h"

namespace speckleq {

namespace {

struct KindName {
    SourceKind kind;
    const char *name;
};

constexpr KindName kKindNames[] = {
    {SourceKind::HeraldedSinglePhoton, "HeraldedSinglePhoton"},
    {SourceKind::TwoPhotonFock, "TwoPhotonFock"},
    {SourceKind::BiphotonPair, "BiphotonPair"},
    {SourceKind::Noon2, "Noon2"},
    {SourceKind::IncoherentMixture, "IncoherentMixture"},
    {SourceKind::MixedBiphoton, "MixedBiphoton"},
    {SourceKind::SpectralBiphoton, "SpectralBiphoton"},
    {SourceKind::IncoherentDispersive, "IncoherentDispersive"},
};

bool is_spectral(SourceKind k) {
    return k == SourceKind::SpectralBiphoton || k == SourceKind::IncoherentDispersive;
}

void require_modes(const SourceModel &s, size_t count) {
    if (s.input_modes.size() != count) {
        throw ValidationError("input_modes", to_string(s.kind) + " needs exactly " + std::to_string(count) +
                                                 " input modes, got " + std::to_string(s.input_modes.size()));
    }
}

}  // namespace

std::string to_string(SourceKind k) {
    for (const auto &kn : kKindNames) {
        if (kn.kind == k) return kn.name;
    }
    return "?";
}

SourceKind source_kind_from_string(const std::string &s) {
    for (const auto &kn : kKindNames) {
        if (s == kn.name) return kn.kind;
    }
    throw ValidationError("kind", "unknown source kind '" + s + "'");
}

std::string to_string(DephasingMode m) {
    return m == DephasingMode::FullAverage ? "FullAverage" : "RmsResidual";
}

DephasingMode dephasing_mode_from_string(const std::string &s) {
    if (s == "FullAverage") return DephasingMode::FullAverage;
    if (s == "RmsResidual") return DephasingMode::RmsResidual;
    throw ValidationError("dephasing_mode", "unknown dephasing mode '" + s + "'");
}

SourceModel make_source(SourceModel spec) {
    if (!(spec.x >= 0.0 && spec.x <= 1.0)) {
        throw ValidationError("x", "indistinguishability must lie in [0, 1], got " + std::to_string(spec.x));
    }
    std::set<size_t> distinct(spec.input_modes.begin(), spec.input_modes.end());
    if (distinct.size() != spec.input_modes.size()) {
        throw ValidationError("input_modes", "mode indices must be distinct");
    }
    if (spec.n_spectral_bins == 0) {
        throw ValidationError("n_spectral_bins", "must be at least 1");
    }
    if (!is_spectral(spec.kind) && spec.n_spectral_bins != 1) {
        throw ValidationError("n_spectral_bins", to_string(spec.kind) + " is monochromatic; n_spectral_bins must be 1");
    }
    switch (spec.kind) {
        case SourceKind::HeraldedSinglePhoton:
        case SourceKind::TwoPhotonFock:
            require_modes(spec, 1);
            break;
        case SourceKind::BiphotonPair:
        case SourceKind::Noon2:
        case SourceKind::SpectralBiphoton:
            require_modes(spec, 2);
            break;
        case SourceKind::IncoherentMixture:
            if (spec.d_incoherent == 0) throw ValidationError("d_incoherent", "must be positive");
            require_modes(spec, spec.d_incoherent);
            break;
        case SourceKind::MixedBiphoton:
            if (spec.d_mixture == 0) throw ValidationError("d_mixture", "must be positive");
            require_modes(spec, 2 * spec.d_mixture);
            break;
        case SourceKind::IncoherentDispersive:
            if (spec.input_modes.empty()) throw ValidationError("input_modes", "at least one mode required");
            if (spec.d_incoherent != spec.input_modes.size() * spec.n_spectral_bins) {
                throw ValidationError("d_incoherent", "must equal input modes x spectral bins (" +
                                                          std::to_string(spec.input_modes.size() * spec.n_spectral_bins) +
                                                          ")");
            }
            break;
    }
    if (spec.jsa) {
        double total = spec.jsa->grid.squaredNorm();
        if (std::abs(total - 1.0) > 1e-9) {
            throw ValidationError("jsa", "joint spectral amplitude is not normalized");
        }
    }
    return spec;
}

double nominal_mode_count(const SourceModel &s) {
    switch (s.kind) {
        case SourceKind::HeraldedSinglePhoton:
        case SourceKind::TwoPhotonFock:
            return 1;
        case SourceKind::BiphotonPair:
        case SourceKind::Noon2:
            return 2;
        case SourceKind::IncoherentMixture:
        case SourceKind::IncoherentDispersive:
            return static_cast<double>(s.d_incoherent);
        case SourceKind::MixedBiphoton:
            return 2.0 * static_cast<double>(s.d_mixture);
        case SourceKind::SpectralBiphoton:
            return 2.0 * static_cast<double>(s.n_spectral_bins);
    }
    return 1;
}

JointSpectralAmplitude jsa_gaussian(double pump_bandwidth_nm, double phasematch_bandwidth_nm, double center_nm,
                                    size_t grid_size, double half_span_nm) {
    if (!(pump_bandwidth_nm > 0)) throw ValidationError("pump_bandwidth", "must be positive");
    if (!(phasematch_bandwidth_nm > 0)) throw ValidationError("phasematch_bandwidth", "must be positive");
    if (grid_size < 8) throw ValidationError("grid_size", "must be at least 8");
    if (half_span_nm <= 0) {
        double marginal_sd =
            std::sqrt((pump_bandwidth_nm * pump_bandwidth_nm + phasematch_bandwidth_nm * phasematch_bandwidth_nm) / 8.0);
        if (!std::isfinite(marginal_sd)) {
            throw ValidationError("half_span", "needed when both bandwidths are unbounded");
        }
        half_span_nm = 5.0 * marginal_sd;
    }

    JointSpectralAmplitude jsa;
    jsa.grid.resize(static_cast<Eigen::Index>(grid_size), static_cast<Eigen::Index>(grid_size));
    std::vector<double> detuning(grid_size);
    for (size_t k = 0; k < grid_size; k++) {
        detuning[k] = -half_span_nm + 2.0 * half_span_nm * static_cast<double>(k) / static_cast<double>(grid_size - 1);
        jsa.signal_nm.push_back(center_nm + detuning[k]);
        jsa.idler_nm.push_back(center_nm + detuning[k]);
    }
    double sp2 = pump_bandwidth_nm * pump_bandwidth_nm;
    double spm2 = phasematch_bandwidth_nm * phasematch_bandwidth_nm;
    for (size_t s = 0; s < grid_size; s++) {
        for (size_t i = 0; i < grid_size; i++) {
            double sum = detuning[s] + detuning[i];
            double diff = detuning[s] - detuning[i];
            jsa.grid(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) =
                std::exp(-sum * sum / (2 * sp2) - diff * diff / (2 * spm2));
        }
    }
    double norm = jsa.grid.norm();
    if (!(norm > 0)) {
        throw ValidationError("jsa", "grid underflows; widen the bandwidths or narrow the span");
    }
    jsa.grid /= norm;
    return jsa;
}

JointSpectralAmplitude default_jsa() {
    // sigma_pm / sigma_p = 7 + sqrt(48) puts the Gaussian Schmidt number at 7; the marginal
    // FWHM is then ~1.54 nm around the degenerate 810 nm.
    return jsa_gaussian(0.1328, 1.85, 810.0, 256);
}

double jsa_correlation(const JointSpectralAmplitude &jsa) {
    double w = 0, ms = 0, mi = 0;
    const auto n_s = jsa.grid.rows();
    const auto n_i = jsa.grid.cols();
    for (Eigen::Index s = 0; s < n_s; s++) {
        for (Eigen::Index i = 0; i < n_i; i++) {
            double p = std::norm(jsa.grid(s, i));
            w += p;
            ms += p * jsa.signal_nm[static_cast<size_t>(s)];
            mi += p * jsa.idler_nm[static_cast<size_t>(i)];
        }
    }
    ms /= w;
    mi /= w;
    double css = 0, cii = 0, csi = 0;
    for (Eigen::Index s = 0; s < n_s; s++) {
        for (Eigen::Index i = 0; i < n_i; i++) {
            double p = std::norm(jsa.grid(s, i)) / w;
            double ds = jsa.signal_nm[static_cast<size_t>(s)] - ms;
            double di = jsa.idler_nm[static_cast<size_t>(i)] - mi;
            css += p * ds * ds;
            cii += p * di * di;
            csi += p * ds * di;
        }
    }
    if (css <= 0 || cii <= 0) {
        return 0;
    }
    return csi / std::sqrt(css * cii);
}

namespace {

// Fraction of each grid line's marginal flux falling into each of n equal-flux slices.
Eigen::MatrixXd equal_flux_slices(const Eigen::VectorXd &marginal, size_t n) {
    const double total = marginal.sum();
    Eigen::MatrixXd frac = Eigen::MatrixXd::Zero(marginal.size(), static_cast<Eigen::Index>(n));
    double lo = 0;
    for (Eigen::Index j = 0; j < marginal.size(); j++) {
        double mass = marginal(j) / total;
        double hi = lo + mass;
        if (mass > 0) {
            for (size_t b = 0; b < n; b++) {
                double b_lo = static_cast<double>(b) / static_cast<double>(n);
                double b_hi = static_cast<double>(b + 1) / static_cast<double>(n);
                double overlap = std::min(hi, b_hi) - std::max(lo, b_lo);
                if (overlap > 0) {
                    frac(j, static_cast<Eigen::Index>(b)) = overlap / mass;
                }
            }
        }
        lo = hi;
    }
    return frac;
}

}  // namespace

std::vector<PairWeight> spectral_pair_weights(const JointSpectralAmplitude &jsa, size_t n_bins) {
    if (n_bins == 0) {
        throw ValidationError("n_bins", "must be at least 1");
    }
    Eigen::MatrixXd intensity = jsa.grid.cwiseAbs2();
    double total = intensity.sum();
    if (!(total > 0)) {
        throw DegenerateInput("joint spectral amplitude is identically zero");
    }
    intensity /= total;
    Eigen::MatrixXd fs = equal_flux_slices(intensity.rowwise().sum(), n_bins);
    Eigen::MatrixXd fi = equal_flux_slices(intensity.colwise().sum().transpose(), n_bins);
    Eigen::MatrixXd cells = fs.transpose() * intensity * fi;

    std::vector<PairWeight> out;
    for (size_t s = 0; s < n_bins; s++) {
        for (size_t i = 0; i < n_bins; i++) {
            double w = cells(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i));
            if (w > 0) {
                out.push_back({s, i, w});
            }
        }
    }
    return out;
}

double effective_spectral_modes(const JointSpectralAmplitude &jsa) {
    Eigen::BDCSVD<ComplexMatrix> svd(jsa.grid);
    Eigen::VectorXd lambda = svd.singularValues().cwiseAbs2();
    double total = lambda.sum();
    if (!(total > 0)) {
        throw DegenerateInput("joint spectral amplitude is identically zero");
    }
    lambda /= total;
    return 1.0 / lambda.squaredNorm();
}

double indistinguishability_from_delay(double delay_s, double coherence_s) {
    if (!(coherence_s > 0)) {
        throw ValidationError("coherence_length", "must be positive");
    }
    double r = delay_s / coherence_s;
    return std::exp(-r * r);
}

}  // namespace speckleq
