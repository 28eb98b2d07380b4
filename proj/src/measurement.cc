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

#include "speckleq/measurement.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <thread>

#include "speckleq/errors.h"
#include "speckleq/seeding.h"

namespace speckleq {

std::string to_string(NoiseMode m) {
    return m == NoiseMode::Noiseless ? "Noiseless" : "Poisson";
}

NoiseMode noise_mode_from_string(const std::string &s) {
    if (s == "Noiseless") return NoiseMode::Noiseless;
    if (s == "Poisson") return NoiseMode::Poisson;
    throw ValidationError("noise_mode", "unknown noise mode '" + s + "'");
}

void DetectorConfig::validate() const {
    if (!(tau_c > 0)) throw ValidationError("tau_c", "must be positive");
    if (!(T > 0)) throw ValidationError("T", "must be positive");
    if (!(singles_rate >= 0)) throw ValidationError("singles_rate", "must be non-negative");
    if (!(pair_rate >= 0)) throw ValidationError("pair_rate", "must be non-negative");
    if (!(dark1 >= 0)) throw ValidationError("dark1", "must be non-negative");
    if (!(dark2 >= 0)) throw ValidationError("dark2", "must be non-negative");
}

double DetectorConfig::eta_s() const {
    return pair_rate / (tau_c * singles_rate * singles_rate);
}

namespace {

void check_pair(const TransmissionMatrix &tm, size_t a, size_t b) {
    if (tm.rows() < 2) {
        throw InvalidSelection("coincidences need at least two output rows");
    }
    if (a == b || a >= tm.cols() || b >= tm.cols()) {
        throw InvalidSelection("invalid input mode pair (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
}

void check_mode(const TransmissionMatrix &tm, size_t k) {
    if (tm.rows() < 2) {
        throw InvalidSelection("detection needs at least two output rows");
    }
    if (k >= tm.cols()) {
        throw InvalidSelection("input mode " + std::to_string(k) + " outside a matrix with " +
                               std::to_string(tm.cols()) + " columns");
    }
}

// Photon a in spectral cell `ts`, photon b in cell `ti`. Direct path a -> 1, b -> 2;
// exchange path a -> 2, b -> 1.
double cross_kernel(const TransmissionMatrix &ts, const TransmissionMatrix &ti, size_t a, size_t b, double x) {
    Complex direct = ts(0, a) * ti(1, b);
    Complex exchange = ts(1, a) * ti(0, b);
    return std::norm(direct) + std::norm(exchange) + 2.0 * x * std::real(direct * std::conj(exchange));
}

IdealOutcome monochromatic(const SourceModel &src, const TransmissionMatrix &tm, std::mt19937_64 &rng) {
    const auto &modes = src.input_modes;
    for (size_t k : modes) {
        check_mode(tm, k);
    }
    IdealOutcome out;
    switch (src.kind) {
        case SourceKind::HeraldedSinglePhoton: {
            size_t k = modes[0];
            out.s1 = std::norm(tm(0, k));
            out.s2 = std::norm(tm(1, k));
            break;
        }
        case SourceKind::TwoPhotonFock: {
            size_t k = modes[0];
            double p1 = std::norm(tm(0, k));
            double p2 = std::norm(tm(1, k));
            out.s1 = 2 * p1;
            out.s2 = 2 * p2;
            out.c_pair = 2 * p1 * p2;
            break;
        }
        case SourceKind::BiphotonPair:
        case SourceKind::Noon2: {
            size_t a = modes[0], b = modes[1];
            out.s1 = std::norm(tm(0, a)) + std::norm(tm(0, b));
            out.s2 = std::norm(tm(1, a)) + std::norm(tm(1, b));
            if (src.kind == SourceKind::BiphotonPair) {
                out.c_pair = pair_coincidence_kernel(tm, a, b, src.x);
            } else {
                double psi = 0;
                if (src.dephasing_mode == DephasingMode::RmsResidual) {
                    psi = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng);
                }
                out.c_pair = noon_coincidence_kernel(tm, a, b, src.dephasing_mode, psi);
            }
            break;
        }
        case SourceKind::IncoherentMixture: {
            for (size_t k : modes) {
                out.s1 += std::norm(tm(0, k));
                out.s2 += std::norm(tm(1, k));
            }
            out.s1 /= static_cast<double>(modes.size());
            out.s2 /= static_cast<double>(modes.size());
            break;
        }
        case SourceKind::MixedBiphoton: {
            const double pairs = static_cast<double>(src.d_mixture);
            for (size_t j = 0; j < src.d_mixture; j++) {
                size_t a = modes[2 * j], b = modes[2 * j + 1];
                out.s1 += std::norm(tm(0, a)) + std::norm(tm(0, b));
                out.s2 += std::norm(tm(1, a)) + std::norm(tm(1, b));
                out.c_pair += pair_coincidence_kernel(tm, a, b, 1.0);
            }
            out.s1 /= pairs;
            out.s2 /= pairs;
            out.c_pair /= pairs;
            break;
        }
        case SourceKind::SpectralBiphoton:
        case SourceKind::IncoherentDispersive:
            throw InvalidSelection(to_string(src.kind) + " needs a spectrally resolved transmission");
    }
    return out;
}

}  // namespace

double pair_coincidence_kernel(const TransmissionMatrix &tm, size_t a, size_t b, double x) {
    check_pair(tm, a, b);
    return cross_kernel(tm, tm, a, b, x);
}

double noon_coincidence_kernel(const TransmissionMatrix &tm, size_t a, size_t b, DephasingMode mode, double psi) {
    check_pair(tm, a, b);
    double pa = std::norm(tm(0, a) * tm(1, a));
    double pb = std::norm(tm(0, b) * tm(1, b));
    if (mode == DephasingMode::FullAverage) {
        return pa + pb;
    }
    return std::max(0.0, pa + pb + std::numbers::sqrt2 * std::sqrt(pa * pb) * std::cos(psi));
}

IdealOutcome ideal_outcome(const SourceModel &source, const TransmissionMatrix &tm, std::mt19937_64 &rng) {
    return monochromatic(source, tm, rng);
}

IdealOutcome ideal_outcome(const SourceModel &source, const SpectralTransmission &st, std::mt19937_64 &rng,
                           std::span<const PairWeight> weights) {
    if (st.bins.empty()) {
        throw InvalidSelection("spectral transmission without bins");
    }
    if (source.kind != SourceKind::SpectralBiphoton && source.kind != SourceKind::IncoherentDispersive) {
        if (st.bins.size() != 1) {
            throw InvalidSelection(to_string(source.kind) + " is monochromatic but got " +
                                   std::to_string(st.bins.size()) + " spectral bins");
        }
        return monochromatic(source, st.bins[0], rng);
    }
    if (st.bins.size() != source.n_spectral_bins) {
        throw InvalidSelection("source expects " + std::to_string(source.n_spectral_bins) + " spectral bins, got " +
                               std::to_string(st.bins.size()));
    }
    for (const auto &bin : st.bins) {
        for (size_t k : source.input_modes) {
            check_mode(bin, k);
        }
    }

    IdealOutcome out;
    if (source.kind == SourceKind::IncoherentDispersive) {
        for (const auto &bin : st.bins) {
            for (size_t k : source.input_modes) {
                out.s1 += std::norm(bin(0, k));
                out.s2 += std::norm(bin(1, k));
            }
        }
        out.s1 /= static_cast<double>(source.d_incoherent);
        out.s2 /= static_cast<double>(source.d_incoherent);
        return out;
    }

    std::vector<PairWeight> own;
    if (weights.empty()) {
        own = spectral_pair_weights(source.jsa ? *source.jsa : default_jsa(), source.n_spectral_bins);
        weights = own;
    }
    size_t a = source.input_modes[0], b = source.input_modes[1];
    for (const auto &w : weights) {
        if (w.bin_s >= st.bins.size() || w.bin_i >= st.bins.size()) {
            throw InvalidSelection("pair weight refers to a missing spectral bin");
        }
        const auto &ts = st.bins[w.bin_s];
        const auto &ti = st.bins[w.bin_i];
        out.c_pair += w.weight * cross_kernel(ts, ti, a, b, source.x);
        out.s1 += w.weight * (std::norm(ts(0, a)) + std::norm(ti(0, b)));
        out.s2 += w.weight * (std::norm(ts(1, a)) + std::norm(ti(1, b)));
    }
    return out;
}

MeasurementRecord detect(const IdealOutcome &ideal, const DetectorConfig &cfg, std::mt19937_64 &rng) {
    double lambda1 = cfg.singles_rate * ideal.s1 + cfg.dark1;
    double lambda2 = cfg.singles_rate * ideal.s2 + cfg.dark2;
    double mu = cfg.pair_rate * ideal.c_pair + cfg.tau_c * lambda1 * lambda2;

    MeasurementRecord rec;
    if (cfg.noise_mode == NoiseMode::Noiseless) {
        rec.I1 = lambda1;
        rec.I2 = lambda2;
        rec.C = mu;
    } else {
        auto counts = [&](double rate) {
            double expected = rate * cfg.T;
            if (expected <= 0) return 0.0;
            return static_cast<double>(std::poisson_distribution<long long>(expected)(rng)) / cfg.T;
        };
        rec.I1 = counts(lambda1);
        rec.I2 = counts(lambda2);
        rec.C = counts(mu);
    }
    rec.R = cfg.tau_c * rec.I1 * rec.I2;
    rec.g2_valid = rec.R > 0;
    rec.g2 = rec.g2_valid ? rec.C / rec.R : 0.0;
    return rec;
}

size_t worker_count_from_env() {
    if (const char *env = std::getenv("SPECKLEQ_WORKERS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) {
            return static_cast<size_t>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

RecordSet run_ensemble(const SourceModel &source, const InterferometerConfig &icfg, const DetectorConfig &dcfg,
                       size_t n_settings, uint64_t master_seed, size_t workers) {
    if (n_settings == 0) {
        throw InvalidDimension("run_ensemble needs at least one setting");
    }
    SourceModel src = make_source(source);
    icfg.validate();
    dcfg.validate();
    if (icfg.n_spectral_bins != src.n_spectral_bins) {
        throw InvalidSelection("source has " + std::to_string(src.n_spectral_bins) +
                               " spectral bins but the interferometer has " + std::to_string(icfg.n_spectral_bins));
    }

    std::vector<PairWeight> weights;
    if (src.kind == SourceKind::SpectralBiphoton) {
        weights = spectral_pair_weights(src.jsa ? *src.jsa : default_jsa(), src.n_spectral_bins);
    }

    RecordSet rs;
    rs.records.resize(n_settings);
    rs.provenance = Provenance{src, icfg, dcfg, master_seed};

    auto run_range = [&](size_t begin, size_t end) {
        for (size_t k = begin; k < end; k++) {
            SpectralTransmission st = sample_spectral_tm(icfg, derive_seed(master_seed, {stream::kMatrix, k}));
            std::mt19937_64 phase_rng(derive_seed(master_seed, {stream::kPhase, k}));
            std::mt19937_64 detector_rng(derive_seed(master_seed, {stream::kDetector, k}));
            MeasurementRecord rec = detect(ideal_outcome(src, st, phase_rng, weights), dcfg, detector_rng);
            rec.setting_index = k;
            rs.records[k] = rec;
        }
    };

    if (workers == 0) {
        workers = worker_count_from_env();
    }
    workers = std::min(workers, n_settings);
    if (workers <= 1) {
        run_range(0, n_settings);
        return rs;
    }
    // Workers own disjoint index ranges; the first failure is rethrown after all join.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    size_t chunk = (n_settings + workers - 1) / workers;
    for (size_t w = 0; w < workers; w++) {
        size_t begin = std::min(n_settings, w * chunk);
        size_t end = std::min(n_settings, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                run_range(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rs;
}

}  // namespace speckleq
