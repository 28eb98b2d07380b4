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

#include "speckleq/features.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "speckleq/errors.h"
#include "speckleq/statistics.h"

namespace speckleq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Columns {
    std::vector<double> intensity;
    std::vector<double> coincidence;
    std::vector<double> g2;
    std::vector<double> coincidence_valid;  // C restricted to records with a valid g2
};

// Point values of every feature, NaN where undefined.
struct Raw {
    double v_i = kNaN, v_c = kNaN, v_g2 = kNaN, mean_g2 = kNaN, d_hat = kNaN, purity = kNaN, big_d = kNaN,
           corr = kNaN;
};

double safe_visibility(std::span<const double> xs) {
    if (xs.size() < 2) return kNaN;
    double mu = mean(xs);
    if (mu == 0) return kNaN;
    return sample_variance(xs) / (mu * mu);
}

Raw compute(const Columns &c) {
    Raw r;
    r.v_i = safe_visibility(c.intensity);
    r.v_c = safe_visibility(c.coincidence);
    if (c.g2.size() >= 2) {
        r.v_g2 = safe_visibility(c.g2);
        r.mean_g2 = mean(c.g2);
        auto p = pearson(c.coincidence_valid, c.g2);
        r.corr = p ? *p : kNaN;
    }
    if (r.v_i > 0) r.d_hat = 1.0 / r.v_i;
    r.purity = purity_from_visibilities(r.v_c, r.v_i);
    if (r.v_c > 1) r.big_d = 1.0 / (r.v_c - 1.0);
    return r;
}

Columns gather(const RecordSet &rs, const Corrections &corr, std::span<const size_t> idx) {
    Columns c;
    c.intensity.reserve(idx.size());
    c.coincidence.reserve(idx.size());
    for (size_t k : idx) {
        const auto &rec = rs.records[k];
        c.intensity.push_back(corr.subtract_dark ? rec.I1 - corr.dark1 : rec.I1);
        c.coincidence.push_back(corr.subtract_accidentals ? rec.C - rec.R : rec.C);
        if (rec.g2_valid) {
            c.g2.push_back(rec.g2);
            c.coincidence_valid.push_back(rec.C);
        }
    }
    return c;
}

double percentile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    double pos = q * static_cast<double>(v.size() - 1);
    size_t lo = static_cast<size_t>(std::floor(pos));
    size_t hi = std::min(v.size() - 1, lo + 1);
    double frac = pos - static_cast<double>(lo);
    return v[lo] * (1 - frac) + v[hi] * frac;
}

std::optional<Estimate> make_estimate(double value, const std::vector<double> &replicates) {
    if (!std::isfinite(value)) {
        return std::nullopt;
    }
    Estimate e{value, 0, value, value};
    std::vector<double> finite;
    for (double v : replicates) {
        if (std::isfinite(v)) finite.push_back(v);
    }
    if (finite.size() >= 2) {
        e.se = std::sqrt(sample_variance(finite));
        e.ci_low = percentile(finite, 0.025);
        e.ci_high = percentile(finite, 0.975);
    }
    return e;
}

void append(std::string &out, const char *name, const std::optional<Estimate> &e) {
    char buf[256];
    if (!e) {
        std::snprintf(buf, sizeof buf, "%s = absent\n", name);
    } else {
        std::snprintf(buf, sizeof buf, "%s = %.6g +- %.3g [%.6g, %.6g]\n", name, e->value, e->se, e->ci_low,
                      e->ci_high);
    }
    out += buf;
}

}  // namespace

FeatureVector estimate_features(const RecordSet &rs, const Corrections &corrections) {
    const size_t n = rs.records.size();
    if (n < 100) {
        throw InsufficientData("estimate_features needs at least 100 records, got " + std::to_string(n));
    }
    std::vector<size_t> all(n);
    for (size_t k = 0; k < n; k++) all[k] = k;
    const Columns columns = gather(rs, corrections, all);
    const Raw point = compute(columns);
    if (!std::isfinite(point.v_i) || !std::isfinite(point.v_c)) {
        throw DegenerateInput("intensity or coincidence column has zero mean");
    }

    std::vector<Raw> reps;
    if (corrections.bootstrap_resamples > 0) {
        std::mt19937_64 rng(corrections.bootstrap_seed);
        std::uniform_int_distribution<size_t> pick(0, n - 1);
        std::vector<size_t> idx(n);
        reps.reserve(corrections.bootstrap_resamples);
        for (size_t b = 0; b < corrections.bootstrap_resamples; b++) {
            for (auto &i : idx) i = pick(rng);
            reps.push_back(compute(gather(rs, corrections, idx)));
        }
    }
    auto column = [&reps](double Raw::*field) {
        std::vector<double> out;
        out.reserve(reps.size());
        for (const auto &r : reps) out.push_back(r.*field);
        return out;
    };

    FeatureVector f;
    f.V_I = *make_estimate(point.v_i, column(&Raw::v_i));
    f.V_C = *make_estimate(point.v_c, column(&Raw::v_c));
    f.purity = *make_estimate(point.purity, column(&Raw::purity));
    f.V_g2 = make_estimate(point.v_g2, column(&Raw::v_g2));
    f.mean_g2 = make_estimate(point.mean_g2, column(&Raw::mean_g2));
    f.d_hat = make_estimate(point.d_hat, column(&Raw::d_hat));
    f.D_hat = make_estimate(point.big_d, column(&Raw::big_d));
    f.corr_C_g2 = make_estimate(point.corr, column(&Raw::corr));
    f.dark_subtracted = corrections.subtract_dark;
    f.accidental_corrected = corrections.subtract_accidentals;
    f.n_records = n;
    f.n_g2_valid = columns.g2.size();
    return f;
}

std::string format_features(const FeatureVector &f) {
    std::string out;
    out += "n_records = " + std::to_string(f.n_records) + "\n";
    out += "n_g2_valid = " + std::to_string(f.n_g2_valid) + "\n";
    append(out, "V_I", f.V_I);
    append(out, "V_C", f.V_C);
    append(out, "V_g2", f.V_g2);
    append(out, "mean_g2", f.mean_g2);
    append(out, "d_hat", f.d_hat);
    append(out, "purity", f.purity);
    append(out, "D_hat", f.D_hat);
    append(out, "corr_C_g2", f.corr_C_g2);
    out += std::string("dark_subtracted = ") + (f.dark_subtracted ? "true" : "false") + "\n";
    out += std::string("accidental_corrected = ") + (f.accidental_corrected ? "true" : "false") + "\n";
    return out;
}

}  // namespace speckleq
