#include "specmine/extract.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "specmine/errors.hpp"
#include "specmine/text.hpp"

namespace specmine::extract {

// ---------------------------------------------------------------------------
// SeedPool
// ---------------------------------------------------------------------------

SeedPool::SeedPool(const std::vector<std::string>& names) {
    for (const auto& n : names) add(n);
    initial_size_ = attrs_.size();
}

SeedPool SeedPool::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open seed file: " + path);
    SeedPool pool;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string norm = text::normalize_ws(line);
        if (norm.empty() || norm[0] == '#') continue;
        pool.add(norm);
    }
    pool.initial_size_ = pool.attrs_.size();
    return pool;
}

bool SeedPool::matches(std::string_view raw_text) const {
    return attrs_.count(text::normalize_key(raw_text)) > 0;
}

void SeedPool::add(std::string_view name) {
    std::string key = text::normalize_key(name);
    if (key.empty() || text::is_punct_only(key)) return;
    attrs_.insert(std::move(key));
}

// ---------------------------------------------------------------------------
// Modes / exclusions
// ---------------------------------------------------------------------------

std::string to_string(ColumnMode m) {
    return m == ColumnMode::TwoCol ? "two-col" : "four-col";
}

ColumnMode column_mode_from_string(const std::string& s) {
    if (s == "two-col") return ColumnMode::TwoCol;
    if (s == "four-col") return ColumnMode::FourCol;
    throw ValidationError("unknown column mode: " + s +
                          " (expected two-col|four-col)");
}

ExclusionSet build_exclusions(const dom::DomNode& block,
                              const dom::TagBlacklist& blacklist) {
    ExclusionSet x;
    // Walk everything, tracking whether we are under a blacklisted tag.
    std::vector<std::pair<const dom::DomNode*, bool>> stack;
    stack.emplace_back(&block,
                       block.is_element() && blacklist.contains(block.tag));
    while (!stack.empty()) {
        auto [cur, banned] = stack.back();
        stack.pop_back();
        if (cur->is_text()) {
            std::string norm = cur->normalized_text();
            if (norm.empty()) continue;
            if (banned || text::is_punct_only(norm)) {
                x.excluded.insert(cur->node_id);
            }
            continue;
        }
        const bool b = banned || blacklist.contains(cur->tag);
        for (const dom::DomNode* c : cur->children) stack.emplace_back(c, b);
    }
    return x;
}

namespace {

std::vector<const dom::DomNode*> clean_fields(
    const dom::DomNode& node, const ExclusionSet& x,
    const dom::TagBlacklist& blacklist) {
    std::vector<const dom::DomNode*> out;
    for (const dom::DomNode* t : dom::text_descendants(node, blacklist)) {
        if (!x.contains(t->node_id)) out.push_back(t);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// MatchTag
// ---------------------------------------------------------------------------

std::optional<MatchResult> match_tag(const dom::DomNode& block,
                                     const SeedPool& seeds,
                                     const dom::TagBlacklist& blacklist) {
    struct Group {
        std::set<std::string> attrs;
        std::vector<const dom::DomNode*> cells;
    };
    std::map<dom::Wrapper, Group> groups;
    for (const dom::DomNode* t : dom::text_descendants(block, blacklist)) {
        std::string norm = t->normalized_text();
        if (!seeds.matches(norm)) continue;
        dom::Wrapper w = dom::wrapper_of(*t, &block);
        auto& g = groups[w];
        g.attrs.insert(text::normalize_key(norm));
        g.cells.push_back(t);
    }
    if (groups.empty()) return std::nullopt;

    // Tie-break needs row counts, which need the exclusion set.
    ExclusionSet x = build_exclusions(block, blacklist);
    auto distinct_rows = [&](const Group& g) {
        std::set<const dom::DomNode*> rows;
        for (const dom::DomNode* cell : g.cells) {
            if (cell->parent == nullptr) continue;
            const dom::DomNode* row =
                bottom_up(*cell->parent, block, x, blacklist);
            if (row) rows.insert(row);
        }
        return rows.size();
    };

    const dom::Wrapper* best_w = nullptr;
    const Group* best_g = nullptr;
    size_t best_rows = 0;
    for (const auto& [w, g] : groups) {
        if (best_g == nullptr) {
            best_w = &w;
            best_g = &g;
            best_rows = distinct_rows(g);
            continue;
        }
        if (g.attrs.size() < best_g->attrs.size()) continue;
        if (g.attrs.size() > best_g->attrs.size()) {
            best_w = &w;
            best_g = &g;
            best_rows = distinct_rows(g);
            continue;
        }
        const size_t rows = distinct_rows(g);
        // Equal support: more distinct rows wins; the map iterates in
        // wrapper order, so equal rows keeps the smaller signature.
        if (rows > best_rows) {
            best_w = &w;
            best_g = &g;
            best_rows = rows;
        }
    }

    MatchResult r;
    r.wrapper = *best_w;
    r.support_cells = best_g->cells;
    r.support = best_g->attrs.size();
    return r;
}

// ---------------------------------------------------------------------------
// BottomUp / ExtractRowWise / TraverseGranular / TraverseBlock
// ---------------------------------------------------------------------------

const dom::DomNode* bottom_up(const dom::DomNode& cell,
                              const dom::DomNode& block_root,
                              const ExclusionSet& exclusions,
                              const dom::TagBlacklist& blacklist) {
    const dom::DomNode* cur = &cell;
    while (cur != nullptr) {
        if (clean_fields(*cur, exclusions, blacklist).size() >= 2) {
            return cur;
        }
        if (cur == &block_root) return nullptr;
        cur = cur->parent;
    }
    return nullptr;
}

std::vector<AttrValuePair> extract_row_wise(
    const dom::DomNode& row, ColumnMode mode, const ExclusionSet& exclusions,
    const dom::TagBlacklist& blacklist) {
    std::vector<AttrValuePair> out;
    auto fields = clean_fields(row, exclusions, blacklist);
    if (fields.size() <= 1) return out;
    if (mode == ColumnMode::TwoCol) {
        for (size_t i = 0; i + 1 < fields.size(); i += 2) {
            AttrValuePair p;
            p.attribute = fields[i]->normalized_text();
            p.value = fields[i + 1]->normalized_text();
            out.push_back(std::move(p));
        }
    } else {
        for (size_t i = 0; i + 3 < fields.size(); i += 4) {
            for (size_t k = 0; k < 4; k += 2) {
                AttrValuePair p;
                p.attribute = fields[i + k]->normalized_text();
                p.value = fields[i + k + 1]->normalized_text();
                out.push_back(std::move(p));
            }
        }
    }
    return out;
}

std::vector<AttrValuePair> traverse_granular(
    const dom::DomNode& block, const dom::DomNode& matched_text,
    ColumnMode mode, const ExclusionSet& exclusions,
    const dom::TagBlacklist& blacklist) {
    std::vector<AttrValuePair> out;
    if (matched_text.parent == nullptr) return out;
    const dom::DomNode* row =
        bottom_up(*matched_text.parent, block, exclusions, blacklist);
    if (row == nullptr) return out;
    if (row == &block || row->parent == nullptr) {
        return extract_row_wise(*row, mode, exclusions, blacklist);
    }
    for (const dom::DomNode* sibling : row->parent->children) {
        if (!sibling->is_element()) continue;
        auto pairs = extract_row_wise(*sibling, mode, exclusions, blacklist);
        out.insert(out.end(), pairs.begin(), pairs.end());
    }
    return out;
}

std::vector<AttrValuePair> traverse_block(
    const dom::DomNode& block, const dom::Wrapper& wrapper,
    const std::vector<const dom::DomNode*>& support_cells, ColumnMode mode,
    const ExclusionSet& exclusions, const dom::TagBlacklist& blacklist) {
    std::vector<AttrValuePair> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (const dom::DomNode* cell : support_cells) {
        if (!(dom::wrapper_of(*cell, &block) == wrapper)) continue;
        auto pairs =
            traverse_granular(block, *cell, mode, exclusions, blacklist);
        for (auto& p : pairs) {
            if (seen.emplace(p.attribute, p.value).second) {
                out.push_back(std::move(p));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

std::vector<AttrValuePair> extract_specifications(
    const classify::CandidateSet& candidates, SeedPool& seeds,
    const ExtractConfig& cfg, const std::string& page_id,
    const dom::TagBlacklist& blacklist) {
    // Matching sees the pool as it stood when the page arrived.
    const SeedPool snapshot = seeds;
    std::vector<AttrValuePair> out;
    for (const auto& cand : candidates.blocks) {
        if (cand.node == nullptr) continue;
        const dom::DomNode& block = *cand.node;
        auto match = match_tag(block, snapshot, blacklist);
        if (!match) continue;
        ExclusionSet x = build_exclusions(block, blacklist);
        auto pairs = traverse_block(block, match->wrapper,
                                    match->support_cells, cfg.mode, x,
                                    blacklist);
        for (auto& p : pairs) {
            p.page_id = page_id;
            p.block_node_id = cand.node_id;
            out.push_back(std::move(p));
        }
    }
    if (cfg.feedback) {
        for (const auto& p : out) seeds.add(p.attribute);
    }
    return out;
}

}  // namespace specmine::extract
