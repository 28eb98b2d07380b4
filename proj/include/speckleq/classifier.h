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

#ifndef SPECKLEQ_CLASSIFIER_H
#define SPECKLEQ_CLASSIFIER_H

#include <Eigen/Dense>
#include <array>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "speckleq/features.h"

namespace speckleq {

enum class StateClass {
    SinglePhoton,
    TwoPhotonFock,
    IndistBiphoton,
    DistBiphoton,
    Noon2,
    Incoherent2Mode,
    IndistSpectralBiphoton,
    DistSpectralBiphoton,
    IncoherentDispersive,
};

inline constexpr std::array<StateClass, 9> kAllStateClasses = {
    StateClass::SinglePhoton,           StateClass::TwoPhotonFock,        StateClass::IndistBiphoton,
    StateClass::DistBiphoton,           StateClass::Noon2,                StateClass::Incoherent2Mode,
    StateClass::IndistSpectralBiphoton, StateClass::DistSpectralBiphoton, StateClass::IncoherentDispersive,
};

std::string to_string(StateClass c);
StateClass state_class_from_string(const std::string &s);

/// (log V_I, log V_g2, mean g2). V_g2 is floored at 1e-12 so that noiseless constant-g2
/// ensembles stay finite. Throws DegenerateInput when the g2 features are absent.
Eigen::Vector3d feature_point(const FeatureVector &f);

/// Rule layer built on mean g2 = 1 for light without pair correlations.
struct RuleConfig {
    double g2_unity_band = 0.05;
    double single_photon_max_modes = 1.5;
    /// Incoherent classes and their reference mode counts; the nearest in d_hat wins.
    std::vector<std::pair<StateClass, double>> incoherent_references = {
        {StateClass::Incoherent2Mode, 2.0},
        {StateClass::IncoherentDispersive, 20.0},
    };
};

struct ClassCentroid {
    StateClass label = StateClass::SinglePhoton;
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    Eigen::Matrix3d covariance = Eigen::Matrix3d::Identity();  ///< regularized
    size_t count = 0;
    bool degenerate = false;  ///< sample covariance was (near) singular before regularization
};

struct ClassifierModel {
    static constexpr int kVersion = 1;
    static constexpr double kRegularization = 1e-6;

    std::vector<ClassCentroid> classes;
    RuleConfig rules;

    bool trained() const { return !classes.empty(); }
};

struct Classification {
    StateClass label;
    double score;        ///< softmin weight of the winner, 1 for rule decisions
    bool from_rule;
    std::vector<std::pair<StateClass, double>> distances;  ///< squared Mahalanobis, per class
};

/// Needs at least 5 vectors for every label present and for every label in `required`.
ClassifierModel fit_model(std::span<const std::pair<StateClass, FeatureVector>> labeled, RuleConfig rules = {},
                          std::span<const StateClass> required = {});

std::optional<StateClass> decision_rules(const FeatureVector &f, const RuleConfig &rules = {});

Classification classify(const FeatureVector &f, const ClassifierModel &model);

void write_model(const ClassifierModel &model, std::ostream &out);
ClassifierModel read_model(std::istream &in, const std::string &source_name);

}  // namespace speckleq

#endif
