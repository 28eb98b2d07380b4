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

#include "speckleq/classifier.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "speckleq/errors.h"
#include "speckleq/ini.h"

namespace speckleq {

namespace {

constexpr const char *kNames[] = {
    "SinglePhoton",   "TwoPhotonFock",          "IndistBiphoton",       "DistBiphoton",        "Noon2",
    "Incoherent2Mode", "IndistSpectralBiphoton", "DistSpectralBiphoton", "IncoherentDispersive",
};

std::string join(const double *v, size_t n) {
    std::string out;
    char buf[40];
    for (size_t i = 0; i < n; i++) {
        std::snprintf(buf, sizeof buf, "%.17g", v[i]);
        if (i) out += ", ";
        out += buf;
    }
    return out;
}

}  // namespace

std::string to_string(StateClass c) {
    return kNames[static_cast<size_t>(c)];
}

StateClass state_class_from_string(const std::string &s) {
    for (auto c : kAllStateClasses) {
        if (to_string(c) == s) return c;
    }
    throw ValidationError("label", "unknown state class '" + s + "'");
}

Eigen::Vector3d feature_point(const FeatureVector &f) {
    if (!f.V_g2 || !f.mean_g2) {
        throw DegenerateInput("feature vector has no g2 statistics");
    }
    if (!(f.V_I.value > 0)) {
        throw DegenerateInput("feature vector has a non-positive intensity visibility");
    }
    return {std::log(f.V_I.value), std::log(std::max(f.V_g2->value, 1e-12)), f.mean_g2->value};
}

ClassifierModel fit_model(std::span<const std::pair<StateClass, FeatureVector>> labeled, RuleConfig rules,
                          std::span<const StateClass> required) {
    std::map<StateClass, std::vector<Eigen::Vector3d>> points;
    for (auto c : required) points[c];
    for (const auto &[label, f] : labeled) {
        points[label].push_back(feature_point(f));
    }
    if (points.empty()) {
        throw TrainingError("no labeled feature vectors");
    }
    ClassifierModel model;
    model.rules = std::move(rules);
    for (const auto &[label, pts] : points) {
        if (pts.size() < 5) {
            throw TrainingError("class " + to_string(label) + " has " + std::to_string(pts.size()) +
                                " feature vectors; at least 5 are required");
        }
        ClassCentroid cc;
        cc.label = label;
        cc.count = pts.size();
        for (const auto &p : pts) cc.centroid += p;
        cc.centroid /= static_cast<double>(pts.size());
        Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
        for (const auto &p : pts) {
            Eigen::Vector3d d = p - cc.centroid;
            cov += d * d.transpose();
        }
        cov /= static_cast<double>(pts.size() - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
        cc.degenerate = eig.eigenvalues().minCoeff() < ClassifierModel::kRegularization;
        cc.covariance = cov + ClassifierModel::kRegularization * Eigen::Matrix3d::Identity();
        model.classes.push_back(cc);
    }
    return model;
}

std::optional<StateClass> decision_rules(const FeatureVector &f, const RuleConfig &rules) {
    if (!f.mean_g2 || std::abs(f.mean_g2->value - 1.0) >= rules.g2_unity_band) {
        return std::nullopt;
    }
    double modes = f.d_hat ? f.d_hat->value : std::numeric_limits<double>::infinity();
    if (modes < rules.single_photon_max_modes) {
        return StateClass::SinglePhoton;
    }
    std::optional<StateClass> best;
    double best_gap = std::numeric_limits<double>::infinity();
    for (const auto &[label, reference] : rules.incoherent_references) {
        double gap = std::abs(modes - reference);
        if (gap < best_gap) {
            best_gap = gap;
            best = label;
        }
    }
    return best;
}

Classification classify(const FeatureVector &f, const ClassifierModel &model) {
    if (!model.trained()) {
        throw TrainingError("classifier model is untrained");
    }
    if (auto rule = decision_rules(f, model.rules)) {
        return {*rule, 1.0, true, {}};
    }
    Eigen::Vector3d x = feature_point(f);
    Classification out{model.classes.front().label, 0.0, false, {}};
    double best = std::numeric_limits<double>::infinity();
    for (const auto &cc : model.classes) {
        Eigen::Vector3d d = x - cc.centroid;
        double d2 = d.dot(cc.covariance.ldlt().solve(d));
        out.distances.emplace_back(cc.label, d2);
        if (d2 < best) {
            best = d2;
            out.label = cc.label;
        }
    }
    double z = 0;
    for (const auto &[_, d2] : out.distances) z += std::exp(-(d2 - best));
    out.score = 1.0 / z;
    return out;
}

void write_model(const ClassifierModel &model, std::ostream &out) {
    out << "# speckleq nearest-centroid model; features (log V_I, log V_g2, mean g2)\n";
    out << "[model]\n";
    out << "version = " << ClassifierModel::kVersion << "\n";
    out << "g2_unity_band = " << join(&model.rules.g2_unity_band, 1) << "\n";
    out << "single_photon_max_modes = " << join(&model.rules.single_photon_max_modes, 1) << "\n";
    std::string refs;
    for (const auto &[label, d] : model.rules.incoherent_references) {
        if (!refs.empty()) refs += ", ";
        refs += to_string(label) + ":" + join(&d, 1);
    }
    out << "incoherent_references = " << refs << "\n";
    std::string labels;
    for (const auto &cc : model.classes) {
        if (!labels.empty()) labels += ", ";
        labels += to_string(cc.label);
    }
    out << "classes = " << labels << "\n";
    for (const auto &cc : model.classes) {
        out << "\n[class." << to_string(cc.label) << "]\n";
        out << "count = " << cc.count << "\n";
        out << "degenerate = " << (cc.degenerate ? "true" : "false") << "\n";
        out << "centroid = " << join(cc.centroid.data(), 3) << "\n";
        out << "covariance = " << join(cc.covariance.data(), 9) << "\n";
    }
}

ClassifierModel read_model(std::istream &in, const std::string &source_name) {
    IniDocument doc = IniDocument::parse(in, source_name);
    if (!doc.has_section("model")) {
        throw ParseError(source_name, 0, "missing [model] section");
    }
    doc.reject_unknown_keys("model", {"version", "g2_unity_band", "single_photon_max_modes",
                                      "incoherent_references", "classes"});
    auto version = doc.get_uint("model", "version");
    if (!version || *version != ClassifierModel::kVersion) {
        doc.fail("model", "version", "unsupported model version");
    }
    ClassifierModel model;
    if (auto v = doc.get_double("model", "g2_unity_band")) model.rules.g2_unity_band = *v;
    if (auto v = doc.get_double("model", "single_photon_max_modes")) model.rules.single_photon_max_modes = *v;
    if (auto refs = doc.get_string("model", "incoherent_references")) {
        model.rules.incoherent_references.clear();
        std::istringstream is(*refs);
        std::string item;
        while (std::getline(is, item, ',')) {
            item.erase(0, item.find_first_not_of(' '));
            size_t colon = item.find(':');
            if (colon == std::string::npos) doc.fail("model", "incoherent_references", "expected Label:modes");
            try {
                model.rules.incoherent_references.emplace_back(state_class_from_string(item.substr(0, colon)),
                                                               std::stod(item.substr(colon + 1)));
            } catch (const std::exception &e) {
                doc.fail("model", "incoherent_references", e.what());
            }
        }
    }
    auto labels = doc.get_string("model", "classes");
    if (!labels) doc.fail("model", "classes", "missing");
    std::istringstream is(*labels);
    std::string name;
    while (std::getline(is, name, ',')) {
        name.erase(0, name.find_first_not_of(' '));
        name.erase(name.find_last_not_of(' ') + 1);
        StateClass label;
        try {
            label = state_class_from_string(name);
        } catch (const ValidationError &e) {
            doc.fail("model", "classes", e.what());
        }
        std::string sec = "class." + name;
        if (!doc.has_section(sec)) doc.fail("model", "classes", "no section [" + sec + "]");
        doc.reject_unknown_keys(sec, {"count", "degenerate", "centroid", "covariance"});
        ClassCentroid cc;
        cc.label = label;
        cc.count = static_cast<size_t>(doc.get_uint(sec, "count").value_or(0));
        cc.degenerate = doc.get_bool(sec, "degenerate").value_or(false);
        auto centroid = doc.get_doubles(sec, "centroid");
        auto cov = doc.get_doubles(sec, "covariance");
        if (!centroid || centroid->size() != 3) doc.fail(sec, "centroid", "expected 3 numbers");
        if (!cov || cov->size() != 9) doc.fail(sec, "covariance", "expected 9 numbers");
        cc.centroid = Eigen::Map<const Eigen::Vector3d>(centroid->data());
        cc.covariance = Eigen::Map<const Eigen::Matrix3d>(cov->data());
        model.classes.push_back(cc);
    }
    if (model.classes.empty()) doc.fail("model", "classes", "no classes listed");
    return model;
}

}  // namespace speckleq
