#include "specmine/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "specmine/errors.hpp"
#include "specmine/serial.hpp"
#include "specmine/text.hpp"

namespace specmine::svm {

namespace {

constexpr size_t kDim = features::kNumFilterFeatures;
constexpr const char* kMagic = "specmine-svm v1";

double dot(const features::FeatureRow& a, const features::FeatureRow& b) {
    double s = 0;
    for (size_t i = 0; i < kDim; ++i) s += a[i] * b[i];
    return s;
}

// The intercept rides along as an implicit constant-one feature, so the
// regularizer covers it too and the SGD shrink applies to it uniformly.
double objective(const std::vector<features::FeatureRow>& xs,
                 const std::vector<int>& ys, const std::vector<double>& cw,
                 const features::FeatureRow& w, double b, double lambda) {
    double loss = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double m = ys[i] * (dot(w, xs[i]) + b);
        loss += cw[i] * std::max(0.0, 1.0 - m);
    }
    loss /= static_cast<double>(xs.size());
    return 0.5 * lambda * (dot(w, w) + b * b) + loss;
}

std::string config_digest(const SvmConfig& cfg) {
    std::string repr = serial::hex(cfg.C) + "|" +
                       std::to_string(cfg.epochs) + "|" +
                       std::to_string(cfg.seed) + "|" +
                       (cfg.class_weighting ? "1" : "0");
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(text::fnv1a(repr)));
    return buf;
}

}  // namespace

SvmModel train_svm(const std::vector<SvmSample>& samples,
                   const SvmConfig& cfg) {
    if (cfg.C <= 0) throw ValidationError("SVM C must be positive");
    if (cfg.epochs < 1) throw ValidationError("SVM epochs must be >= 1");
    if (samples.empty()) {
        throw DegenerateDataError("SVM training set is empty");
    }
    size_t n_pos = 0;
    size_t n_neg = 0;
    for (const auto& s : samples) {
        if (s.label == 1) ++n_pos;
        else if (s.label == -1) ++n_neg;
        else throw ValidationError("SVM labels must be +1 or -1");
    }
    if (n_pos == 0 || n_neg == 0) {
        throw DegenerateDataError("SVM training set has a single label");
    }

    const size_t n = samples.size();
    std::vector<features::FeatureRow> raw;
    raw.reserve(n);
    for (const auto& s : samples) raw.push_back(s.features);

    SvmModel model;
    model.config = cfg;
    model.stats = features::FeatureStats::fit(raw);

    std::vector<features::FeatureRow> xs;
    xs.reserve(n);
    for (const auto& r : raw) xs.push_back(model.stats.scale(r));
    std::vector<int> ys;
    ys.reserve(n);
    for (const auto& s : samples) ys.push_back(s.label);

    std::vector<double> cw(n, 1.0);
    if (cfg.class_weighting) {
        double w_pos = static_cast<double>(n) / (2.0 * n_pos);
        double w_neg = static_cast<double>(n) / (2.0 * n_neg);
        for (size_t i = 0; i < n; ++i) cw[i] = ys[i] == 1 ? w_pos : w_neg;
    }

    const double lambda = 1.0 / (cfg.C * static_cast<double>(n));
    features::FeatureRow w{};
    double b = 0;

    std::mt19937_64 rng(cfg.seed);
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});

    size_t t = 0;
    features::FeatureRow best_w{};
    double best_b = 0;
    double best_obj = objective(xs, ys, cw, best_w, best_b, lambda);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t k = 0; k < n; ++k) {
            ++t;
            const size_t i = order[k];
            const double lr = 1.0 / (lambda * static_cast<double>(t));
            const double margin = ys[i] * (dot(w, xs[i]) + b);
            const double shrink = std::max(0.0, 1.0 - lr * lambda);
            for (size_t j = 0; j < kDim; ++j) w[j] *= shrink;
            b *= shrink;
            if (margin < 1.0) {
                const double step = lr * cw[i] * ys[i];
                for (size_t j = 0; j < kDim; ++j) w[j] += step * xs[i][j];
                b += step;
            }
        }
        const double obj = objective(xs, ys, cw, w, b, lambda);
        model.epoch_objective.push_back(obj);
        // The last SGD iterate oscillates around the optimum; keep the
        // best epoch-end snapshot of the monitored objective instead.
        if (obj < best_obj) {
            best_obj = obj;
            best_w = w;
            best_b = b;
        }
    }

    model.weights = best_w;
    model.bias = best_b;
    return model;
}

SvmPrediction predict_svm(const SvmModel& model,
                          const features::FeatureRow& f) {
    auto scaled = model.stats.scale(f);
    double margin = dot(model.weights, scaled) + model.bias;
    return {margin > model.threshold, margin};
}

SvmPrediction predict_svm(const SvmModel& model,
                          const features::FilterFeatures& f) {
    return predict_svm(model, f.as_array());
}

void save_svm(const SvmModel& model, const std::string& path) {
    auto out = serial::open_out(path);
    out << kMagic << "\n";
    out << "C " << serial::hex(model.config.C) << "\n";
    out << "epochs " << model.config.epochs << "\n";
    out << "seed " << model.config.seed << "\n";
    out << "class_weighting " << (model.config.class_weighting ? 1 : 0)
        << "\n";
    out << "digest " << config_digest(model.config) << "\n";
    out << "threshold " << serial::hex(model.threshold) << "\n";
    out << "weights";
    for (double v : model.weights) out << ' ' << serial::hex(v);
    out << "\n";
    out << "bias " << serial::hex(model.bias) << "\n";
    out << "mean";
    for (double v : model.stats.mean) out << ' ' << serial::hex(v);
    out << "\n";
    out << "stddev";
    for (double v : model.stats.stddev) out << ' ' << serial::hex(v);
    out << "\n";
    if (!out) throw IoError("failed writing SVM model to " + path);
}

SvmModel load_svm(const std::string& path) {
    auto in = serial::open_in(path);
    serial::expect_header(in, kMagic);
    SvmModel m;
    m.config.C = serial::unhex(serial::read_fields(in, "C", 1)[0], "C");
    m.config.epochs = static_cast<int>(serial::to_int(serial::read_fields(in, "epochs", 1)[0], "epochs"));
    m.config.seed = serial::to_u64(serial::read_fields(in, "seed", 1)[0], "seed");
    m.config.class_weighting =
        serial::read_fields(in, "class_weighting", 1)[0] == "1";
    std::string digest = serial::read_fields(in, "digest", 1)[0];
    if (digest != config_digest(m.config)) {
        throw FormatError("SVM config digest mismatch in " + path);
    }
    m.threshold =
        serial::unhex(serial::read_fields(in, "threshold", 1)[0], "threshold");
    auto wf = serial::read_fields(in, "weights", kDim);
    for (size_t i = 0; i < kDim; ++i) m.weights[i] = serial::unhex(wf[i], "weights");
    m.bias = serial::unhex(serial::read_fields(in, "bias", 1)[0], "bias");
    auto mf = serial::read_fields(in, "mean", kDim);
    for (size_t i = 0; i < kDim; ++i) m.stats.mean[i] = serial::unhex(mf[i], "mean");
    auto sf = serial::read_fields(in, "stddev", kDim);
    for (size_t i = 0; i < kDim; ++i) m.stats.stddev[i] = serial::unhex(sf[i], "stddev");
    return m;
}

}  // namespace specmine::svm
