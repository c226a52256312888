#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specmine/cnn.hpp"
#include "specmine/dom.hpp"
#include "specmine/svm.hpp"
#include "specmine/token_embed.hpp"

namespace specmine::classify {

struct BlockScore {
    bool accept = false;
    double score = 0.0;
};

// A classification stage. The cascade is written against this seam so
// tests can drive the traversal with oracle stages.
using BlockScorer = std::function<BlockScore(const dom::DomNode&)>;

BlockScorer always_accept();
BlockScorer always_reject();
// Filter stage: six structural features -> linear SVM margin.
BlockScorer svm_scorer(const svm::SvmModel& model,
                       const dom::TagBlacklist& blacklist);
// Coarse stage: tokenize -> embed -> CNN.
BlockScorer cnn_scorer(const cnn::CnnModel& model,
                       const embed::EmbeddingTable& table);

enum class Arrangement { FilterOnly, CoarseOnly, Cascade };

std::string to_string(Arrangement a);
Arrangement arrangement_from_string(const std::string& s);

struct Candidate {
    int node_id = -1;
    dom::DomNode* node = nullptr;
    double filter_margin = 0.0;  // stage score; 1.0 when the stage is bypassed
    double coarse_score = 0.0;
    std::string tag;
    // Structural path from the document root, captured at acceptance time
    // (element_index per level), so it stays meaningful on the original
    // document even after this node is decomposed.
    std::vector<int> path;
};

struct CandidateSet {
    std::vector<Candidate> blocks;
};

struct TraversalOptions {
    // Count only element children for the ">1 children" gate; whitespace
    // text nodes between tags would otherwise inflate counts.
    bool element_children_only = true;
};

struct TraversalLog {
    // node_ids of eligible nodes, in visit order.
    std::vector<int> visited;
    size_t classified = 0;
    size_t filter_accepts = 0;
    size_t coarse_accepts = 0;
};

// True when the traversal would subject this node to classification:
// an element, not blacklisted, with a text descendant and more than one
// child. The dataset harvester mirrors this gate.
bool is_candidate_block(const dom::DomNode& node,
                        const dom::TagBlacklist& blacklist,
                        const TraversalOptions& opts = {});

// The cascade traversal. Walks the tree from `start` in document order;
// skips blacklisted or textless subtrees entirely; classifies nodes with
// more than one child through `filter` then `coarse`; on double-accept
// records the block and decomposes it so the subtree is never revisited;
// otherwise recurses into children. Mutates `doc` via decompose.
CandidateSet spec_traverse(dom::Document& doc, dom::DomNode& start,
                           const BlockScorer& filter,
                           const BlockScorer& coarse,
                           const dom::TagBlacklist& blacklist =
                               dom::TagBlacklist::standard(),
                           const TraversalOptions& opts = {},
                           TraversalLog* log = nullptr);

// Arrangement wrapper starting at doc.body(): FilterOnly and CoarseOnly
// treat the bypassed stage as always-accept. Models that the arrangement
// does not need may be null; a needed null model throws ValidationError.
CandidateSet run_arrangement(dom::Document& doc, Arrangement arrangement,
                             const svm::SvmModel* filter_model,
                             const cnn::CnnModel* coarse_model,
                             const embed::EmbeddingTable* table,
                             const dom::TagBlacklist& blacklist =
                                 dom::TagBlacklist::standard(),
                             const TraversalOptions& opts = {},
                             TraversalLog* log = nullptr);

}  // namespace specmine::classify
