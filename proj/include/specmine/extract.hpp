#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "specmine/classify.hpp"
#include "specmine/dom.hpp"

namespace specmine::extract {

// Known attribute names, normalized (lowercase, whitespace collapsed).
// Grows through extraction feedback; never shrinks during a run.
class SeedPool {
public:
    SeedPool() = default;
    explicit SeedPool(const std::vector<std::string>& names);

    // One name per line, UTF-8, "#" starts a comment line. Throws IoError.
    static SeedPool from_file(const std::string& path);

    // Case-insensitive exact match on normalized text.
    bool matches(std::string_view raw_text) const;
    // Ignored when empty or punctuation-only after normalization.
    void add(std::string_view name);

    size_t size() const { return attrs_.size(); }
    size_t initial_size() const { return initial_size_; }
    const std::set<std::string>& attributes() const { return attrs_; }

private:
    std::set<std::string> attrs_;
    size_t initial_size_ = 0;
};

struct AttrValuePair {
    std::string attribute;
    std::string value;
    std::string page_id;
    int block_node_id = -1;

    bool operator==(const AttrValuePair& o) const {
        return attribute == o.attribute && value == o.value &&
               page_id == o.page_id && block_node_id == o.block_node_id;
    }
};

enum class ColumnMode { TwoCol, FourCol };

std::string to_string(ColumnMode m);
ColumnMode column_mode_from_string(const std::string& s);

// Text nodes extraction must not treat as fields: nodes inside
// blacklisted tags plus nodes that are punctuation-only after
// normalization.
struct ExclusionSet {
    std::unordered_set<int> excluded;

    bool contains(int node_id) const { return excluded.count(node_id) > 0; }
};

ExclusionSet build_exclusions(const dom::DomNode& block,
                              const dom::TagBlacklist& blacklist =
                                  dom::TagBlacklist::standard());

struct MatchResult {
    dom::Wrapper wrapper;
    // Matched text nodes for the winning wrapper, in document order.
    std::vector<const dom::DomNode*> support_cells;
    // Distinct seed attributes matched under the wrapper.
    size_t support = 0;
};

// Scans the block for text nodes equal to a seed attribute, groups the
// mentions by wrapper and returns the wrapper with maximum support.
// Ties prefer the wrapper spanning more distinct rows, then the
// lexicographically smallest signature. nullopt when nothing matches.
std::optional<MatchResult> match_tag(const dom::DomNode& block,
                                     const SeedPool& seeds,
                                     const dom::TagBlacklist& blacklist =
                                         dom::TagBlacklist::standard());

// Ascends from `cell` until a node holds at least two non-excluded text
// fields, checking `cell` itself first and stopping at the block root
// (inclusive). Returns the row, or nullptr when even the root fails the
// test (row not found).
const dom::DomNode* bottom_up(const dom::DomNode& cell,
                              const dom::DomNode& block_root,
                              const ExclusionSet& exclusions,
                              const dom::TagBlacklist& blacklist =
                                  dom::TagBlacklist::standard());

// Field-wise extraction from one row: enumerates non-excluded text
// fields in document order; TwoCol pairs them as (attr, value) per
// alternation, FourCol consumes strict groups of four as two pairs.
// Rows with fewer than two fields emit nothing, which is what silently
// skips one-cell title rows.
std::vector<AttrValuePair> extract_row_wise(const dom::DomNode& row,
                                            ColumnMode mode,
                                            const ExclusionSet& exclusions,
                                            const dom::TagBlacklist& blacklist =
                                                dom::TagBlacklist::standard());

// Row discovery + sibling sweep: bottom_up from the matched cell, then
// extract_row_wise over the row and each of its element siblings in
// document order. Empty when no row qualifies.
std::vector<AttrValuePair> traverse_granular(
    const dom::DomNode& block, const dom::DomNode& matched_text,
    ColumnMode mode, const ExclusionSet& exclusions,
    const dom::TagBlacklist& blacklist = dom::TagBlacklist::standard());

// Runs traverse_granular from every support cell whose wrapper equals
// the induced wrapper and unions the results ((attribute, value) unique,
// first occurrence in document order wins).
std::vector<AttrValuePair> traverse_block(
    const dom::DomNode& block, const dom::Wrapper& wrapper,
    const std::vector<const dom::DomNode*>& support_cells, ColumnMode mode,
    const ExclusionSet& exclusions,
    const dom::TagBlacklist& blacklist = dom::TagBlacklist::standard());

struct ExtractConfig {
    ColumnMode mode = ColumnMode::TwoCol;
    bool feedback = true;
};

// Extraction over one page's candidates. Matching uses a snapshot of the
// pool taken at entry, so within-page results are independent of block
// order; with feedback enabled every extracted attribute name enriches
// `seeds` afterwards, feeding later pages.
std::vector<AttrValuePair> extract_specifications(
    const classify::CandidateSet& candidates, SeedPool& seeds,
    const ExtractConfig& cfg, const std::string& page_id = "",
    const dom::TagBlacklist& blacklist = dom::TagBlacklist::standard());

}  // namespace specmine::extract
