#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specmine/matrix.hpp"
#include "specmine/token_embed.hpp"

namespace specmine::cnn {

// Architecture constants; all overridable for tiny test models.
struct CnnConfig {
    size_t input_len = embed::kDefaultSeqLen;  // L
    size_t embed_dim = embed::kDefaultDim;     // D
    size_t filters = 24;      // channels out of every conv layer
    size_t conv_width = 4;    // filter width along the token axis
    size_t num_layers = 4;    // conv+ReLU stack depth
    size_t classes = 2;
    double dropout_p = 0.4;
};

struct ConvLayer {
    // weights: out_ch x (in_ch * width), row per output channel.
    Matrix w;
    std::vector<double> b;
    size_t in_ch = 0;
    size_t out_ch = 0;
    size_t width = 0;
};

struct CnnModel {
    CnnConfig cfg;
    std::vector<ConvLayer> conv;
    Matrix fc_w;               // classes x filters
    std::vector<double> fc_b;  // classes
    // Digest of the embedding table the model was trained against.
    uint64_t table_digest = 0;

    size_t parameter_count() const;
};

// Seeded He-uniform weights, zero biases.
CnnModel init_cnn(const CnnConfig& cfg, uint64_t seed);

// Activations captured by a train-mode forward, consumed by backward.
struct ForwardCache {
    bool valid = false;
    Matrix x_dropped;                 // L x D after input dropout
    std::vector<Matrix> pre_act;      // per layer, L x out_ch
    std::vector<Matrix> post_act;     // per layer, L x out_ch
    std::vector<double> pooled;       // filters
    std::vector<size_t> pool_argmax;  // filters
    std::vector<double> pooled_dropped;
    std::vector<double> drop_scale_in;    // per input cell: 0 or 1/(1-p)
    std::vector<double> drop_scale_pool;  // per pooled channel
    std::vector<double> logits;
};

// dropout -> [conv -> ReLU] x num_layers -> max-pool over time ->
// dropout -> fc. Dropout is active only in train_mode and uses inverted
// scaling, so eval mode needs no rescale. Throws ShapeError when x is
// not input_len x embed_dim. Eval mode ignores `seed` and `cache`.
std::vector<double> forward(const CnnModel& model, const Matrix& x,
                            bool train_mode, uint64_t seed,
                            ForwardCache* cache = nullptr);

struct CnnGradients {
    std::vector<ConvLayer> conv;  // same shapes as the model
    Matrix fc_w;
    std::vector<double> fc_b;
};

CnnGradients zero_gradients(const CnnModel& model);

// Exact gradients of the cross-entropy of one cached sample w.r.t. every
// parameter, accumulated into `out`. The L2 penalty is the trainer's job.
// Throws StaleCacheError when the cache did not come from a train-mode
// forward.
void backward(const CnnModel& model, const ForwardCache& cache, int label,
              CnnGradients& out);

struct TrainConfig {
    int batch_size = 2;
    double lr = 1e-5;
    double l2 = 1e-6;
    int epochs = 10;
    uint64_t seed = 1;
    // When > 0, that fraction is held out and the checkpoint with the
    // best validation loss is returned instead of the last epoch.
    double validation_fraction = 0.0;
    CnnConfig arch;
};

struct CnnSample {
    embed::TokenSequence seq;
    int label = 0;  // 1 = spec, 0 = non-spec
};

// Adam (beta1 0.9, beta2 0.999, eps 1e-8) over seeded shuffled
// minibatches; loss = mean cross-entropy + l2 * ||theta||^2. Throws
// DegenerateDataError unless both classes are present, ShapeError when
// table.dim() != arch.embed_dim.
CnnModel train_cnn(const std::vector<CnnSample>& data,
                   const embed::EmbeddingTable& table,
                   const TrainConfig& cfg);

struct CoarsePrediction {
    bool spec = false;
    double score = 0.0;  // softmax probability of the spec class
};

// tokenize -> embed -> eval forward -> argmax.
CoarsePrediction predict_coarse(const CnnModel& model,
                                const embed::EmbeddingTable& table,
                                const dom::DomNode& block);

// Versioned text checkpoint with hexfloat tensors and the paired
// embedding-table digest. Throws IoError / FormatError.
void save_cnn(const CnnModel& model, const std::string& path);
CnnModel load_cnn(const std::string& path);

// Throws FormatError when `table` is not the one the model was trained
// against.
void verify_pairing(const CnnModel& model,
                    const embed::EmbeddingTable& table);

}  // namespace specmine::cnn
