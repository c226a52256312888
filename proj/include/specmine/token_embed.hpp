#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specmine/dom.hpp"
#include "specmine/matrix.hpp"

namespace specmine::embed {

inline constexpr size_t kDefaultSeqLen = 40;
inline constexpr size_t kDefaultDim = 100;
// Reserved tokens. The tokenizer can never emit either: word tokens keep
// only letters plus "<>/", and no tag token takes the "<x/>" form.
inline constexpr const char* kPadToken = "<pad/>";
inline constexpr const char* kUnkToken = "<unk/>";

// Fixed-length token window over a block's markup.
struct TokenSequence {
    std::vector<std::string> tokens;

    size_t size() const { return tokens.size(); }
};

// Serializes the block subtree to tokens: "<tag>" / "</tag>" for element
// boundaries (attributes dropped, void elements emit only the open token)
// and the words of text nodes, lowercased, with ASCII digits and
// punctuation removed except "<", ">", "/". Truncated or padded with
// kPadToken to exactly `len` tokens.
TokenSequence tokenize_block(const dom::DomNode& block,
                             size_t len = kDefaultSeqLen);

struct EmbedConfig {
    size_t dim = kDefaultDim;
    int window = 5;
    int negatives = 5;
    int epochs = 5;
    double lr = 0.025;
    uint64_t seed = 1;
};

class EmbeddingTable {
public:
    EmbeddingTable() = default;
    EmbeddingTable(std::vector<std::string> tokens, size_t dim);

    size_t dim() const { return dim_; }
    // Row count, pad and unk included.
    size_t vocab_size() const { return tokens_.size(); }

    int pad_index() const { return 0; }
    int unk_index() const { return 1; }

    // unk for unknown tokens, pad for the pad token.
    int index_of(std::string_view token) const;
    const std::string& token_at(int idx) const { return tokens_[size_t(idx)]; }

    std::span<const double> vector_at(int idx) const;
    std::span<double> vector_at(int idx);

    const std::vector<std::string>& tokens() const { return tokens_; }

private:
    size_t dim_ = 0;
    std::vector<std::string> tokens_;  // [0]=pad, [1]=unk, then vocab
    std::vector<double> vectors_;      // vocab_size x dim, row-major
    std::vector<std::pair<std::string, int>> lookup_;  // sorted by token
    friend EmbeddingTable load_embeddings(const std::string& path);
};

// Skip-gram with negative sampling over the token corpus. Pad tokens are
// invisible to training. Vocabulary is ordered by frequency (ties broken
// lexicographically); the unk vector is the mean of all trained vectors.
// Deterministic under cfg.seed. Throws EmptyCorpusError when the corpus
// has no non-pad tokens, ValidationError on bad config.
EmbeddingTable train_embeddings(const std::vector<TokenSequence>& corpus,
                                const EmbedConfig& cfg);

// Row i = vector of seq.tokens[i] (unk rows for OOV, zeros for pad).
Matrix embed_sequence(const EmbeddingTable& table, const TokenSequence& seq);

// Versioned text format, hexfloat values, bitwise round-trip.
void save_embeddings(const EmbeddingTable& table, const std::string& path);
EmbeddingTable load_embeddings(const std::string& path);

// Digest over vocab order and vector bits; CNN checkpoints store it so a
// model is never run against a different table than it was trained with.
uint64_t table_digest(const EmbeddingTable& table);

double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace specmine::embed
