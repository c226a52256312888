#include "specmine/classify.hpp"

#include "specmine/errors.hpp"
#include "specmine/features.hpp"

namespace specmine::classify {

BlockScorer always_accept() {
    return [](const dom::DomNode&) { return BlockScore{true, 1.0}; };
}

BlockScorer always_reject() {
    return [](const dom::DomNode&) { return BlockScore{false, -1.0}; };
}

BlockScorer svm_scorer(const svm::SvmModel& model,
                       const dom::TagBlacklist& blacklist) {
    const svm::SvmModel* m = &model;
    const dom::TagBlacklist* bl = &blacklist;
    return [m, bl](const dom::DomNode& node) {
        auto f = features::compute_filter_features(node, *bl);
        auto pred = svm::predict_svm(*m, f);
        return BlockScore{pred.spec, pred.margin};
    };
}

BlockScorer cnn_scorer(const cnn::CnnModel& model,
                       const embed::EmbeddingTable& table) {
    const cnn::CnnModel* m = &model;
    const embed::EmbeddingTable* t = &table;
    return [m, t](const dom::DomNode& node) {
        auto pred = cnn::predict_coarse(*m, *t, node);
        return BlockScore{pred.spec, pred.score};
    };
}

std::string to_string(Arrangement a) {
    switch (a) {
        case Arrangement::FilterOnly: return "filter";
        case Arrangement::CoarseOnly: return "coarse";
        case Arrangement::Cascade: return "cascade";
    }
    return "cascade";
}

Arrangement arrangement_from_string(const std::string& s) {
    if (s == "filter") return Arrangement::FilterOnly;
    if (s == "coarse") return Arrangement::CoarseOnly;
    if (s == "cascade") return Arrangement::Cascade;
    throw ValidationError("unknown arrangement: " + s +
                          " (expected filter|coarse|cascade)");
}

bool is_candidate_block(const dom::DomNode& node,
                        const dom::TagBlacklist& blacklist,
                        const TraversalOptions& opts) {
    if (!node.is_element()) return false;
    if (blacklist.contains(node.tag)) return false;
    if (!dom::has_text_descendant(node, blacklist)) return false;
    const size_t n_children = opts.element_children_only
                                  ? node.element_child_count()
                                  : node.children.size();
    return n_children > 1;
}

CandidateSet spec_traverse(dom::Document& doc, dom::DomNode& start,
                           const BlockScorer& filter,
                           const BlockScorer& coarse,
                           const dom::TagBlacklist& blacklist,
                           const TraversalOptions& opts, TraversalLog* log) {
    CandidateSet out;
    std::vector<dom::DomNode*> stack;
    stack.push_back(&start);

    while (!stack.empty()) {
        dom::DomNode* node = stack.back();
        stack.pop_back();
        if (!node->is_element()) continue;
        if (!doc.attached(*node)) continue;
        if (blacklist.contains(node->tag)) continue;
        if (!dom::has_text_descendant(*node, blacklist)) continue;

        const size_t n_children = opts.element_children_only
                                      ? node->element_child_count()
                                      : node->children.size();
        if (n_children > 1) {
            if (log) {
                log->visited.push_back(node->node_id);
                ++log->classified;
            }
            BlockScore fs = filter(*node);
            if (fs.accept) {
                if (log) ++log->filter_accepts;
                BlockScore cs = coarse(*node);
                if (cs.accept) {
                    if (log) ++log->coarse_accepts;
                    Candidate c;
                    c.node_id = node->node_id;
                    c.node = node;
                    c.filter_margin = fs.score;
                    c.coarse_score = cs.score;
                    c.tag = node->tag;
                    c.path = dom::node_path(*node);
                    doc.decompose(*node);
                    out.blocks.push_back(std::move(c));
                    continue;  // subtree never revisited
                }
            }
        }
        for (auto it = node->children.rbegin(); it != node->children.rend();
             ++it) {
            stack.push_back(*it);
        }
    }
    return out;
}

CandidateSet run_arrangement(dom::Document& doc, Arrangement arrangement,
                             const svm::SvmModel* filter_model,
                             const cnn::CnnModel* coarse_model,
                             const embed::EmbeddingTable* table,
                             const dom::TagBlacklist& blacklist,
                             const TraversalOptions& opts,
                             TraversalLog* log) {
    const bool needs_filter = arrangement != Arrangement::CoarseOnly;
    const bool needs_coarse = arrangement != Arrangement::FilterOnly;
    if (needs_filter && filter_model == nullptr) {
        throw ValidationError("arrangement needs a filter model");
    }
    if (needs_coarse && (coarse_model == nullptr || table == nullptr)) {
        throw ValidationError(
            "arrangement needs a coarse model and embedding table");
    }
    BlockScorer filter = needs_filter ? svm_scorer(*filter_model, blacklist)
                                      : always_accept();
    BlockScorer coarse = needs_coarse ? cnn_scorer(*coarse_model, *table)
                                      : always_accept();
    return spec_traverse(doc, doc.body(), filter, coarse, blacklist, opts,
                         log);
}

}  // namespace specmine::classify
