#include "specmine/cnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "specmine/errors.hpp"
#include "specmine/serial.hpp"

namespace specmine::cnn {

namespace {

constexpr const char* kMagic = "specmine-cnn v1";

// TF-style SAME padding for stride 1: total = width-1, extra on the right.
size_t pad_left(size_t width) { return (width - 1) / 2; }

void conv_forward(const ConvLayer& layer, const Matrix& in, Matrix& out) {
    const size_t len = in.rows;
    const size_t pl = pad_left(layer.width);
    out = Matrix(len, layer.out_ch);
    for (size_t t = 0; t < len; ++t) {
        for (size_t oc = 0; oc < layer.out_ch; ++oc) {
            double acc = layer.b[oc];
            const double* wrow = &layer.w.at(oc, 0);
            for (size_t k = 0; k < layer.width; ++k) {
                const long long s =
                    static_cast<long long>(t) + static_cast<long long>(k) -
                    static_cast<long long>(pl);
                if (s < 0 || s >= static_cast<long long>(len)) continue;
                const double* irow = &in.at(static_cast<size_t>(s), 0);
                for (size_t ic = 0; ic < layer.in_ch; ++ic) {
                    acc += wrow[ic * layer.width + k] * irow[ic];
                }
            }
            out.at(t, oc) = acc;
        }
    }
}

// Gradients through one conv layer; din may be null for the first layer.
void conv_backward(const ConvLayer& layer, const Matrix& in,
                   const Matrix& dout, ConvLayer& dlayer, Matrix* din) {
    const size_t len = in.rows;
    const size_t pl = pad_left(layer.width);
    if (din) *din = Matrix(len, layer.in_ch);
    for (size_t t = 0; t < len; ++t) {
        for (size_t oc = 0; oc < layer.out_ch; ++oc) {
            const double g = dout.at(t, oc);
            if (g == 0.0) continue;
            dlayer.b[oc] += g;
            double* dwrow = &dlayer.w.at(oc, 0);
            const double* wrow = &layer.w.at(oc, 0);
            for (size_t k = 0; k < layer.width; ++k) {
                const long long s =
                    static_cast<long long>(t) + static_cast<long long>(k) -
                    static_cast<long long>(pl);
                if (s < 0 || s >= static_cast<long long>(len)) continue;
                const double* irow = &in.at(static_cast<size_t>(s), 0);
                for (size_t ic = 0; ic < layer.in_ch; ++ic) {
                    dwrow[ic * layer.width + k] += g * irow[ic];
                    if (din) {
                        din->at(static_cast<size_t>(s), ic) +=
                            g * wrow[ic * layer.width + k];
                    }
                }
            }
        }
    }
}

std::vector<double> softmax(const std::vector<double>& logits) {
    double mx = *std::max_element(logits.begin(), logits.end());
    std::vector<double> p(logits.size());
    double sum = 0;
    for (size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - mx);
        sum += p[i];
    }
    for (auto& v : p) v /= sum;
    return p;
}

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
};

// Flattened view over every model tensor so Adam is one loop.
std::vector<double*> parameter_refs(CnnModel& m) {
    std::vector<double*> refs;
    for (auto& layer : m.conv) {
        for (auto& w : layer.w.data) refs.push_back(&w);
        for (auto& b : layer.b) refs.push_back(&b);
    }
    for (auto& w : m.fc_w.data) refs.push_back(&w);
    for (auto& b : m.fc_b) refs.push_back(&b);
    return refs;
}

std::vector<const double*> gradient_refs(const CnnGradients& g) {
    std::vector<const double*> refs;
    for (const auto& layer : g.conv) {
        for (const auto& w : layer.w.data) refs.push_back(&w);
        for (const auto& b : layer.b) refs.push_back(&b);
    }
    for (const auto& w : g.fc_w.data) refs.push_back(&w);
    for (const auto& b : g.fc_b) refs.push_back(&b);
    return refs;
}

}  // namespace

size_t CnnModel::parameter_count() const {
    size_t n = 0;
    for (const auto& layer : conv) n += layer.w.data.size() + layer.b.size();
    return n + fc_w.data.size() + fc_b.size();
}

CnnModel init_cnn(const CnnConfig& cfg, uint64_t seed) {
    if (cfg.input_len == 0 || cfg.embed_dim == 0 || cfg.filters == 0 ||
        cfg.conv_width == 0 || cfg.num_layers == 0 || cfg.classes < 2 ||
        cfg.dropout_p < 0 || cfg.dropout_p >= 1) {
        throw ValidationError("bad CNN config");
    }
    CnnModel m;
    m.cfg = cfg;
    std::mt19937_64 rng(seed);
    auto he_fill = [&rng](Matrix& w, size_t fan_in) {
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
        std::uniform_real_distribution<double> dist(-limit, limit);
        for (auto& v : w.data) v = dist(rng);
    };
    for (size_t l = 0; l < cfg.num_layers; ++l) {
        ConvLayer layer;
        layer.in_ch = l == 0 ? cfg.embed_dim : cfg.filters;
        layer.out_ch = cfg.filters;
        layer.width = cfg.conv_width;
        layer.w = Matrix(layer.out_ch, layer.in_ch * layer.width);
        layer.b.assign(layer.out_ch, 0.0);
        he_fill(layer.w, layer.in_ch * layer.width);
        m.conv.push_back(std::move(layer));
    }
    m.fc_w = Matrix(cfg.classes, cfg.filters);
    m.fc_b.assign(cfg.classes, 0.0);
    he_fill(m.fc_w, cfg.filters);
    return m;
}

std::vector<double> forward(const CnnModel& model, const Matrix& x,
                            bool train_mode, uint64_t seed,
                            ForwardCache* cache) {
    const CnnConfig& cfg = model.cfg;
    if (x.rows != cfg.input_len || x.cols != cfg.embed_dim) {
        throw ShapeError("CNN input must be " + std::to_string(cfg.input_len) +
                         "x" + std::to_string(cfg.embed_dim) + ", got " +
                         std::to_string(x.rows) + "x" +
                         std::to_string(x.cols));
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double keep = 1.0 - cfg.dropout_p;

    Matrix cur = x;
    std::vector<double> scale_in;
    if (train_mode && cfg.dropout_p > 0) {
        scale_in.resize(cur.data.size());
        for (size_t i = 0; i < cur.data.size(); ++i) {
            scale_in[i] = unif(rng) < cfg.dropout_p ? 0.0 : 1.0 / keep;
            cur.data[i] *= scale_in[i];
        }
    } else if (train_mode) {
        scale_in.assign(cur.data.size(), 1.0);
    }

    if (cache) {
        *cache = ForwardCache{};
        cache->x_dropped = cur;
        cache->drop_scale_in = scale_in;
    }

    for (size_t l = 0; l < model.conv.size(); ++l) {
        Matrix pre;
        conv_forward(model.conv[l], cur, pre);
        Matrix post = pre;
        for (auto& v : post.data) v = v > 0 ? v : 0.0;
        if (cache) {
            cache->pre_act.push_back(pre);
            cache->post_act.push_back(post);
        }
        cur = std::move(post);
    }

    std::vector<double> pooled(cfg.filters,
                               -std::numeric_limits<double>::infinity());
    std::vector<size_t> argmax(cfg.filters, 0);
    for (size_t t = 0; t < cur.rows; ++t) {
        for (size_t c = 0; c < cfg.filters; ++c) {
            if (cur.at(t, c) > pooled[c]) {
                pooled[c] = cur.at(t, c);
                argmax[c] = t;
            }
        }
    }

    std::vector<double> dropped = pooled;
    std::vector<double> scale_pool;
    if (train_mode && cfg.dropout_p > 0) {
        scale_pool.resize(dropped.size());
        for (size_t i = 0; i < dropped.size(); ++i) {
            scale_pool[i] = unif(rng) < cfg.dropout_p ? 0.0 : 1.0 / keep;
            dropped[i] *= scale_pool[i];
        }
    } else if (train_mode) {
        scale_pool.assign(dropped.size(), 1.0);
    }

    std::vector<double> logits(cfg.classes, 0.0);
    for (size_t c = 0; c < cfg.classes; ++c) {
        double acc = model.fc_b[c];
        for (size_t f = 0; f < cfg.filters; ++f) {
            acc += model.fc_w.at(c, f) * dropped[f];
        }
        logits[c] = acc;
    }

    if (cache) {
        cache->pooled = pooled;
        cache->pool_argmax = argmax;
        cache->pooled_dropped = dropped;
        cache->drop_scale_pool = scale_pool;
        cache->logits = logits;
        cache->valid = train_mode;
    }
    return logits;
}

CnnGradients zero_gradients(const CnnModel& model) {
    CnnGradients g;
    for (const auto& layer : model.conv) {
        ConvLayer z;
        z.in_ch = layer.in_ch;
        z.out_ch = layer.out_ch;
        z.width = layer.width;
        z.w = Matrix(layer.w.rows, layer.w.cols);
        z.b.assign(layer.b.size(), 0.0);
        g.conv.push_back(std::move(z));
    }
    g.fc_w = Matrix(model.fc_w.rows, model.fc_w.cols);
    g.fc_b.assign(model.fc_b.size(), 0.0);
    return g;
}

void backward(const CnnModel& model, const ForwardCache& cache, int label,
              CnnGradients& out) {
    if (!cache.valid) {
        throw StaleCacheError(
            "backward needs the cache of a train-mode forward");
    }
    const CnnConfig& cfg = model.cfg;
    if (label < 0 || static_cast<size_t>(label) >= cfg.classes) {
        throw ValidationError("label out of range");
    }

    std::vector<double> dlogits = softmax(cache.logits);
    dlogits[static_cast<size_t>(label)] -= 1.0;

    std::vector<double> d_dropped(cfg.filters, 0.0);
    for (size_t c = 0; c < cfg.classes; ++c) {
        out.fc_b[c] += dlogits[c];
        for (size_t f = 0; f < cfg.filters; ++f) {
            out.fc_w.at(c, f) += dlogits[c] * cache.pooled_dropped[f];
            d_dropped[f] += dlogits[c] * model.fc_w.at(c, f);
        }
    }

    std::vector<double> d_pooled(cfg.filters, 0.0);
    for (size_t f = 0; f < cfg.filters; ++f) {
        const double s = cache.drop_scale_pool.empty()
                             ? 1.0
                             : cache.drop_scale_pool[f];
        d_pooled[f] = d_dropped[f] * s;
    }

    const size_t last = model.conv.size() - 1;
    Matrix dpost(cache.post_act[last].rows, cache.post_act[last].cols);
    for (size_t f = 0; f < cfg.filters; ++f) {
        dpost.at(cache.pool_argmax[f], f) += d_pooled[f];
    }

    for (size_t l = model.conv.size(); l-- > 0;) {
        Matrix dpre = dpost;
        const Matrix& pre = cache.pre_act[l];
        for (size_t i = 0; i < dpre.data.size(); ++i) {
            if (pre.data[i] <= 0) dpre.data[i] = 0;
        }
        const Matrix& in = l == 0 ? cache.x_dropped : cache.post_act[l - 1];
        if (l == 0) {
            conv_backward(model.conv[l], in, dpre, out.conv[l], nullptr);
        } else {
            Matrix din;
            conv_backward(model.conv[l], in, dpre, out.conv[l], &din);
            dpost = std::move(din);
        }
    }
}

namespace {

double l2_norm_sq(const CnnModel& m) {
    double s = 0;
    for (const auto& layer : m.conv) {
        for (double v : layer.w.data) s += v * v;
        for (double v : layer.b) s += v * v;
    }
    for (double v : m.fc_w.data) s += v * v;
    for (double v : m.fc_b) s += v * v;
    return s;
}

double eval_loss(const CnnModel& model, const std::vector<Matrix>& xs,
                 const std::vector<int>& ys,
                 const std::vector<size_t>& idx, double l2) {
    double loss = 0;
    for (size_t i : idx) {
        auto logits = forward(model, xs[i], false, 0, nullptr);
        auto p = softmax(logits);
        loss += -std::log(std::max(p[static_cast<size_t>(ys[i])], 1e-300));
    }
    loss /= static_cast<double>(idx.size());
    return loss + l2 * l2_norm_sq(model);
}

}  // namespace

CnnModel train_cnn(const std::vector<CnnSample>& data,
                   const embed::EmbeddingTable& table,
                   const TrainConfig& cfg) {
    if (cfg.batch_size < 1 || cfg.lr <= 0 || cfg.l2 < 0 || cfg.epochs < 1 ||
        cfg.validation_fraction < 0 || cfg.validation_fraction >= 1) {
        throw ValidationError("bad CNN train config");
    }
    if (table.dim() != cfg.arch.embed_dim) {
        throw ShapeError("embedding dim does not match CNN input dim");
    }
    bool has_pos = false;
    bool has_neg = false;
    for (const auto& s : data) {
        if (s.label == 1) has_pos = true;
        else if (s.label == 0) has_neg = true;
        else throw ValidationError("CNN labels must be 0 or 1");
    }
    if (!has_pos || !has_neg) {
        throw DegenerateDataError("CNN training set needs both classes");
    }

    std::vector<Matrix> xs;
    xs.reserve(data.size());
    std::vector<int> ys;
    ys.reserve(data.size());
    for (const auto& s : data) {
        if (s.seq.tokens.size() != cfg.arch.input_len) {
            throw ShapeError("token sequence length != CNN input length");
        }
        xs.push_back(embed_sequence(table, s.seq));
        ys.push_back(s.label);
    }

    std::mt19937_64 rng(cfg.seed);
    std::vector<size_t> order(data.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<size_t> train_idx = order;
    std::vector<size_t> val_idx;
    if (cfg.validation_fraction > 0) {
        size_t n_val = static_cast<size_t>(
            std::floor(cfg.validation_fraction * double(order.size())));
        n_val = std::min(n_val, order.size() - 1);
        val_idx.assign(order.end() - static_cast<long>(n_val), order.end());
        train_idx.assign(order.begin(),
                         order.end() - static_cast<long>(n_val));
    }

    CnnModel model = init_cnn(cfg.arch, cfg.seed);
    model.table_digest = embed::table_digest(table);

    AdamState adam;
    adam.m.assign(model.parameter_count(), 0.0);
    adam.v.assign(model.parameter_count(), 0.0);
    constexpr double b1 = 0.9;
    constexpr double b2 = 0.999;
    constexpr double eps = 1e-8;
    size_t adam_t = 0;

    CnnModel best = model;
    double best_val = std::numeric_limits<double>::infinity();

    ForwardCache cache;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(train_idx.begin(), train_idx.end(), rng);
        for (size_t start = 0; start < train_idx.size();
             start += static_cast<size_t>(cfg.batch_size)) {
            const size_t end = std::min(
                train_idx.size(), start + static_cast<size_t>(cfg.batch_size));
            CnnGradients grads = zero_gradients(model);
            for (size_t k = start; k < end; ++k) {
                const size_t i = train_idx[k];
                forward(model, xs[i], true, rng(), &cache);
                backward(model, cache, ys[i], grads);
            }
            const double inv = 1.0 / static_cast<double>(end - start);
            auto prefs = parameter_refs(model);
            auto grefs = gradient_refs(grads);
            ++adam_t;
            const double bc1 = 1.0 - std::pow(b1, double(adam_t));
            const double bc2 = 1.0 - std::pow(b2, double(adam_t));
            for (size_t p = 0; p < prefs.size(); ++p) {
                double g = *grefs[p] * inv + 2.0 * cfg.l2 * (*prefs[p]);
                adam.m[p] = b1 * adam.m[p] + (1 - b1) * g;
                adam.v[p] = b2 * adam.v[p] + (1 - b2) * g * g;
                const double mhat = adam.m[p] / bc1;
                const double vhat = adam.v[p] / bc2;
                *prefs[p] -= cfg.lr * mhat / (std::sqrt(vhat) + eps);
            }
        }
        if (!val_idx.empty()) {
            const double vl = eval_loss(model, xs, ys, val_idx, cfg.l2);
            if (vl < best_val) {
                best_val = vl;
                best = model;
            }
        }
    }
    return val_idx.empty() ? model : best;
}

CoarsePrediction predict_coarse(const CnnModel& model,
                                const embed::EmbeddingTable& table,
                                const dom::DomNode& block) {
    auto seq = embed::tokenize_block(block, model.cfg.input_len);
    Matrix x = embed_sequence(table, seq);
    auto logits = forward(model, x, false, 0, nullptr);
    auto p = softmax(logits);
    CoarsePrediction out;
    out.score = p[1];
    out.spec = p[1] > p[0];
    return out;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

namespace {

void write_values(std::ostream& out, const char* key,
                  const std::vector<double>& vals) {
    out << key;
    for (double v : vals) out << ' ' << serial::hex(v);
    out << "\n";
}

std::vector<double> read_values(std::istream& in, const char* key,
                                size_t count) {
    auto fields = serial::read_fields(in, key, count);
    std::vector<double> vals(count);
    for (size_t i = 0; i < count; ++i) {
        vals[i] = serial::unhex(fields[i], key);
    }
    return vals;
}

}  // namespace

void save_cnn(const CnnModel& model, const std::string& path) {
    auto out = serial::open_out(path);
    out << kMagic << "\n";
    const CnnConfig& c = model.cfg;
    out << "arch " << c.input_len << ' ' << c.embed_dim << ' ' << c.filters
        << ' ' << c.conv_width << ' ' << c.num_layers << ' ' << c.classes
        << ' ' << serial::hex(c.dropout_p) << "\n";
    out << "table_digest " << model.table_digest << "\n";
    for (size_t l = 0; l < model.conv.size(); ++l) {
        const auto& layer = model.conv[l];
        write_values(out, "conv_w", layer.w.data);
        write_values(out, "conv_b", layer.b);
    }
    write_values(out, "fc_w", model.fc_w.data);
    write_values(out, "fc_b", model.fc_b);
    if (!out) throw IoError("failed writing CNN checkpoint to " + path);
}

CnnModel load_cnn(const std::string& path) {
    auto in = serial::open_in(path);
    serial::expect_header(in, kMagic);
    auto arch = serial::read_fields(in, "arch", 7);
    CnnConfig c;
    c.input_len = static_cast<size_t>(serial::to_u64(arch[0], "arch"));
    c.embed_dim = static_cast<size_t>(serial::to_u64(arch[1], "arch"));
    c.filters = static_cast<size_t>(serial::to_u64(arch[2], "arch"));
    c.conv_width = static_cast<size_t>(serial::to_u64(arch[3], "arch"));
    c.num_layers = static_cast<size_t>(serial::to_u64(arch[4], "arch"));
    c.classes = static_cast<size_t>(serial::to_u64(arch[5], "arch"));
    c.dropout_p = serial::unhex(arch[6], "arch");

    CnnModel m = init_cnn(c, 0);
    m.table_digest =
        serial::to_u64(serial::read_fields(in, "table_digest", 1)[0],
                       "table_digest");
    for (size_t l = 0; l < m.conv.size(); ++l) {
        auto& layer = m.conv[l];
        layer.w.data = read_values(in, "conv_w", layer.w.data.size());
        layer.b = read_values(in, "conv_b", layer.b.size());
    }
    m.fc_w.data = read_values(in, "fc_w", m.fc_w.data.size());
    m.fc_b = read_values(in, "fc_b", m.fc_b.size());
    return m;
}

void verify_pairing(const CnnModel& model,
                    const embed::EmbeddingTable& table) {
    if (model.table_digest != embed::table_digest(table)) {
        throw FormatError(
            "CNN checkpoint was trained against a different embedding table");
    }
}

}  // namespace specmine::cnn
