#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specmine/features.hpp"

namespace specmine::svm {

struct SvmConfig {
    double C = 1.0;
    int epochs = 50;
    uint64_t seed = 1;
    bool class_weighting = true;
};

struct SvmSample {
    features::FeatureRow features{};
    int label = 0;  // +1 spec, -1 non-spec
};

struct SvmModel {
    features::FeatureRow weights{};
    double bias = 0.0;
    double threshold = 0.0;
    features::FeatureStats stats;
    SvmConfig config;

    // Regularized hinge objective after each epoch. Diagnostics only;
    // not persisted.
    std::vector<double> epoch_objective;
};

struct SvmPrediction {
    bool spec = false;
    double margin = 0.0;
};

// Trains the linear filter on z-scored features via seeded stochastic
// subgradient descent on the primal hinge loss (step 1/(lambda*t),
// lambda = 1/(C*n)). With class_weighting each sample's hinge term is
// reweighted by the inverse frequency of its class. Deterministic for a
// fixed seed. Throws DegenerateDataError when samples are empty or carry
// a single label, ValidationError when C <= 0 or epochs < 1.
SvmModel train_svm(const std::vector<SvmSample>& samples,
                   const SvmConfig& cfg);

// margin = w . scale(f) + b; spec iff margin > threshold.
SvmPrediction predict_svm(const SvmModel& model,
                          const features::FeatureRow& f);
SvmPrediction predict_svm(const SvmModel& model,
                          const features::FilterFeatures& f);

// Versioned text format; floats stored as hexfloat so round-trips are
// bitwise exact. Throws IoError / FormatError.
void save_svm(const SvmModel& model, const std::string& path);
SvmModel load_svm(const std::string& path);

}  // namespace specmine::svm
