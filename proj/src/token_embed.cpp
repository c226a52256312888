#include "specmine/token_embed.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <random>

#include "specmine/errors.hpp"
#include "specmine/serial.hpp"
#include "specmine/text.hpp"

namespace specmine::embed {

namespace {

constexpr const char* kMagic = "specmine-embed v1";

const std::unordered_set<std::string>& void_tags() {
    static const std::unordered_set<std::string> s = {
        "area", "base", "br", "col",   "embed",  "hr",    "img",
        "input", "link", "meta", "param", "source", "track", "wbr"};
    return s;
}

// Lowercases and strips ASCII digits/punctuation, keeping "<>/" and any
// non-ASCII bytes.
std::string clean_word(std::string_view word) {
    std::string out;
    out.reserve(word.size());
    for (unsigned char c : word) {
        if (c >= 0x80) {
            out += static_cast<char>(c);
        } else if ((c >= 'a' && c <= 'z')) {
            out += static_cast<char>(c);
        } else if (c >= 'A' && c <= 'Z') {
            out += static_cast<char>(c - 'A' + 'a');
        } else if (c == '<' || c == '>' || c == '/') {
            out += static_cast<char>(c);
        }
        // ASCII digits, punctuation and the rest are dropped.
    }
    return out;
}

void tokenize_rec(const dom::DomNode& node, size_t len,
                  std::vector<std::string>& out) {
    if (out.size() >= len) return;
    if (node.is_text()) {
        std::string norm = node.normalized_text();
        size_t pos = 0;
        while (pos < norm.size() && out.size() < len) {
            size_t ws = norm.find(' ', pos);
            if (ws == std::string::npos) ws = norm.size();
            std::string w = clean_word(
                std::string_view(norm).substr(pos, ws - pos));
            if (!w.empty()) out.push_back(std::move(w));
            pos = ws + 1;
        }
        return;
    }
    out.push_back("<" + node.tag + ">");
    for (const dom::DomNode* c : node.children) {
        tokenize_rec(*c, len, out);
        if (out.size() >= len) return;
    }
    if (void_tags().count(node.tag) == 0) {
        out.push_back("</" + node.tag + ">");
    }
}

double sigmoid(double x) {
    if (x > 30) return 1.0;
    if (x < -30) return 0.0;
    return 1.0 / (1.0 + std::exp(-x));
}

}  // namespace

TokenSequence tokenize_block(const dom::DomNode& block, size_t len) {
    TokenSequence seq;
    seq.tokens.reserve(len);
    tokenize_rec(block, len, seq.tokens);
    if (seq.tokens.size() > len) seq.tokens.resize(len);
    while (seq.tokens.size() < len) seq.tokens.emplace_back(kPadToken);
    return seq;
}

// ---------------------------------------------------------------------------
// EmbeddingTable
// ---------------------------------------------------------------------------

EmbeddingTable::EmbeddingTable(std::vector<std::string> tokens, size_t dim)
    : dim_(dim), tokens_(std::move(tokens)) {
    vectors_.assign(tokens_.size() * dim_, 0.0);
    lookup_.reserve(tokens_.size());
    for (size_t i = 0; i < tokens_.size(); ++i) {
        lookup_.emplace_back(tokens_[i], static_cast<int>(i));
    }
    std::sort(lookup_.begin(), lookup_.end());
}

int EmbeddingTable::index_of(std::string_view token) const {
    auto it = std::lower_bound(
        lookup_.begin(), lookup_.end(), token,
        [](const auto& p, std::string_view t) { return p.first < t; });
    if (it != lookup_.end() && it->first == token) return it->second;
    return unk_index();
}

std::span<const double> EmbeddingTable::vector_at(int idx) const {
    return {vectors_.data() + static_cast<size_t>(idx) * dim_, dim_};
}

std::span<double> EmbeddingTable::vector_at(int idx) {
    return {vectors_.data() + static_cast<size_t>(idx) * dim_, dim_};
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

EmbeddingTable train_embeddings(const std::vector<TokenSequence>& corpus,
                                const EmbedConfig& cfg) {
    if (cfg.dim == 0 || cfg.window < 1 || cfg.negatives < 0 ||
        cfg.epochs < 1 || cfg.lr <= 0) {
        throw ValidationError("bad embedding config");
    }
    std::map<std::string, size_t> counts;
    size_t total_positions = 0;
    for (const auto& seq : corpus) {
        for (const auto& tok : seq.tokens) {
            if (tok == kPadToken) continue;
            ++counts[tok];
            ++total_positions;
        }
    }
    if (total_positions == 0) {
        throw EmptyCorpusError("embedding corpus has no non-pad tokens");
    }

    std::vector<std::pair<std::string, size_t>> by_freq(counts.begin(),
                                                        counts.end());
    std::sort(by_freq.begin(), by_freq.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    std::vector<std::string> tokens;
    tokens.reserve(by_freq.size() + 2);
    tokens.emplace_back(kPadToken);
    tokens.emplace_back(kUnkToken);
    for (const auto& [tok, cnt] : by_freq) tokens.push_back(tok);

    EmbeddingTable table(std::move(tokens), cfg.dim);
    const int first_real = 2;
    const size_t vocab_n = by_freq.size();

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> init(-0.5 / double(cfg.dim),
                                                0.5 / double(cfg.dim));
    for (size_t i = 0; i < vocab_n; ++i) {
        auto row = table.vector_at(first_real + static_cast<int>(i));
        for (auto& v : row) v = init(rng);
    }
    std::vector<double> out(vocab_n * cfg.dim, 0.0);

    // Unigram^0.75 cumulative table for negative sampling.
    std::vector<double> cum(vocab_n);
    double acc = 0;
    for (size_t i = 0; i < vocab_n; ++i) {
        acc += std::pow(static_cast<double>(by_freq[i].second), 0.75);
        cum[i] = acc;
    }
    std::uniform_real_distribution<double> unif(0.0, acc);
    auto sample_negative = [&]() -> size_t {
        double r = unif(rng);
        return static_cast<size_t>(
            std::lower_bound(cum.begin(), cum.end(), r) - cum.begin());
    };

    const size_t total_steps =
        static_cast<size_t>(cfg.epochs) * total_positions;
    size_t step = 0;
    std::vector<int> idx_buf;
    std::vector<double> neu1e(cfg.dim);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (const auto& seq : corpus) {
            idx_buf.clear();
            for (const auto& tok : seq.tokens) {
                if (tok == kPadToken) continue;
                idx_buf.push_back(table.index_of(tok));
            }
            const int n = static_cast<int>(idx_buf.size());
            for (int i = 0; i < n; ++i) {
                ++step;
                const double alpha = std::max(
                    cfg.lr * (1.0 - double(step) / double(total_steps + 1)),
                    cfg.lr * 1e-4);
                const int center = idx_buf[size_t(i)];
                auto v_in = table.vector_at(center);
                for (int j = std::max(0, i - cfg.window);
                     j <= std::min(n - 1, i + cfg.window); ++j) {
                    if (j == i) continue;
                    const size_t ctx =
                        static_cast<size_t>(idx_buf[size_t(j)] - first_real);
                    std::fill(neu1e.begin(), neu1e.end(), 0.0);
                    for (int k = 0; k <= cfg.negatives; ++k) {
                        size_t target;
                        double label;
                        if (k == 0) {
                            target = ctx;
                            label = 1.0;
                        } else {
                            target = sample_negative();
                            if (target == ctx) continue;
                            label = 0.0;
                        }
                        double* v_out = out.data() + target * cfg.dim;
                        double f = 0;
                        for (size_t d = 0; d < cfg.dim; ++d) {
                            f += v_in[d] * v_out[d];
                        }
                        const double g = (label - sigmoid(f)) * alpha;
                        for (size_t d = 0; d < cfg.dim; ++d) {
                            neu1e[d] += g * v_out[d];
                            v_out[d] += g * v_in[d];
                        }
                    }
                    for (size_t d = 0; d < cfg.dim; ++d) v_in[d] += neu1e[d];
                }
            }
        }
    }

    // unk = mean of trained vectors, so OOV tokens land in the middle of
    // the space instead of at the pad origin.
    auto unk = table.vector_at(table.unk_index());
    for (size_t i = 0; i < vocab_n; ++i) {
        auto row = table.vector_at(first_real + static_cast<int>(i));
        for (size_t d = 0; d < cfg.dim; ++d) unk[d] += row[d];
    }
    if (vocab_n > 0) {
        for (size_t d = 0; d < cfg.dim; ++d) unk[d] /= double(vocab_n);
    }
    return table;
}

Matrix embed_sequence(const EmbeddingTable& table, const TokenSequence& seq) {
    Matrix m(seq.tokens.size(), table.dim());
    for (size_t i = 0; i < seq.tokens.size(); ++i) {
        auto row = table.vector_at(table.index_of(seq.tokens[i]));
        for (size_t d = 0; d < table.dim(); ++d) m.at(i, d) = row[d];
    }
    return m;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

void save_embeddings(const EmbeddingTable& table, const std::string& path) {
    auto out = serial::open_out(path);
    out << kMagic << "\n";
    out << "dim " << table.dim() << "\n";
    out << "tokens " << table.vocab_size() << "\n";
    for (size_t i = 0; i < table.vocab_size(); ++i) {
        out << "row " << table.token_at(static_cast<int>(i));
        for (double v : table.vector_at(static_cast<int>(i))) {
            out << ' ' << serial::hex(v);
        }
        out << "\n";
    }
    if (!out) throw IoError("failed writing embeddings to " + path);
}

EmbeddingTable load_embeddings(const std::string& path) {
    auto in = serial::open_in(path);
    serial::expect_header(in, kMagic);
    size_t dim = static_cast<size_t>(serial::to_u64(serial::read_fields(in, "dim", 1)[0], "dim"));
    size_t n = static_cast<size_t>(serial::to_u64(serial::read_fields(in, "tokens", 1)[0], "tokens"));
    if (dim == 0 || n < 2) throw FormatError("bad embedding table shape");

    std::vector<std::string> toks(n);
    std::vector<double> vecs(n * dim, 0.0);
    for (size_t i = 0; i < n; ++i) {
        auto fields = serial::read_fields(in, "row", dim + 1);
        toks[i] = fields[0];
        for (size_t d = 0; d < dim; ++d) {
            vecs[i * dim + d] = serial::unhex(fields[d + 1], "row vector");
        }
    }
    if (toks[0] != kPadToken || toks[1] != kUnkToken) {
        throw FormatError("embedding table reserved rows are corrupt");
    }
    EmbeddingTable table(std::move(toks), dim);
    table.vectors_ = std::move(vecs);
    return table;
}

uint64_t table_digest(const EmbeddingTable& table) {
    std::string blob;
    blob.reserve(table.vocab_size() * (table.dim() * 8 + 8));
    blob += std::to_string(table.dim());
    blob += '\n';
    for (size_t i = 0; i < table.vocab_size(); ++i) {
        blob += table.token_at(static_cast<int>(i));
        blob += '\0';
        for (double v : table.vector_at(static_cast<int>(i))) {
            char bytes[sizeof(double)];
            std::memcpy(bytes, &v, sizeof(double));
            blob.append(bytes, sizeof(double));
        }
    }
    return text::fnv1a(blob);
}

double cosine(std::span<const double> a, std::span<const double> b) {
    double dot = 0;
    double na = 0;
    double nb = 0;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0 || nb == 0) return 0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace specmine::embed
