#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "specmine/classify.hpp"
#include "specmine/dom.hpp"
#include "specmine/extract.hpp"

namespace specmine::dataset {

enum class Split { Train, Validation, Holdout };

std::string to_string(Split s);
Split split_from_string(const std::string& s);

struct ManifestEntry {
    std::string page_id;
    std::string html_path;
    Split split = Split::Train;
    std::string source;
    std::string category;
};

struct CorpusManifest {
    std::vector<ManifestEntry> entries;
};

// JSONL, one entry per line, schema field "v":1. Throws IoError /
// FormatError; load validates page_id uniqueness (ValidationError) and,
// when check_paths is set, that every html_path exists (PathError).
void save_manifest(const CorpusManifest& manifest, const std::string& path);
CorpusManifest load_manifest(const std::string& path, bool check_paths = true);

enum class BlockClass { Spec, NonSpec };

struct BlockLabel {
    std::string page_id;
    std::vector<int> block_path;  // element-child indices from the root
    BlockClass label = BlockClass::NonSpec;
};

void save_labels(const std::vector<BlockLabel>& labels,
                 const std::string& path);
std::vector<BlockLabel> load_labels(const std::string& path);

struct GroundTruth {
    std::string page_id;
    std::vector<std::pair<std::string, std::string>> pairs;
};

// Pair records per page. Loading rejects empty attributes or values
// (ValidationError) and collapses duplicate pairs with a warning on
// stderr.
void save_ground_truth(const std::vector<GroundTruth>& truths,
                       const std::string& path);
std::vector<GroundTruth> load_ground_truth(const std::string& path);

// Classifier-training negatives: removes the labeled spec blocks from
// the tree (decompose), then harvests every remaining element that the
// cascade would classify (more than one child, text at any depth,
// outside blacklisted subtrees) as NonSpec, in document order, dropping
// the first skip_top harvested blocks (the top-of-tree giants). Mutates
// `doc`. Throws PathError when a spec path does not resolve.
std::vector<BlockLabel> harvest_negative_blocks(
    dom::Document& doc, const std::vector<std::vector<int>>& spec_paths,
    int skip_top,
    const dom::TagBlacklist& blacklist = dom::TagBlacklist::standard(),
    const classify::TraversalOptions& opts = {});

inline constexpr int kDefaultSkipTop = 3;

// Markup families for the synthetic generator, mirroring the tag mixes
// spec blocks show up in on real product pages.
enum class TagVocab { UlDiv, DlDtSpan, DivSpan, Table };

std::string to_string(TagVocab v);
TagVocab vocab_from_string(const std::string& s);
inline constexpr TagVocab kAllVocabs[] = {TagVocab::UlDiv, TagVocab::DlDtSpan,
                                          TagVocab::DivSpan, TagVocab::Table};

struct SyntheticConfig {
    int n_pages = 10;
    TagVocab vocab = TagVocab::UlDiv;
    int rows_per_block = 6;
    int decoys = 3;       // decoy blocks per page (menus, prose, reviews)
    bool titles = true;   // one-cell title row atop the spec block
    extract::ColumnMode mode = extract::ColumnMode::TwoCol;
    int bloat = 0;        // approx extra DOM nodes per page, for perf tests
    uint64_t seed = 1;
};

struct SyntheticPage {
    std::string page_id;
    std::string html;
    std::vector<int> spec_path;
};

struct SyntheticCorpus {
    std::vector<SyntheticPage> pages;
    std::vector<BlockLabel> labels;  // the Spec labels
    std::vector<GroundTruth> truths;
};

// Deterministic under cfg.seed. Every page carries exactly one spec
// block in the chosen vocabulary whose rows include at least three
// attributes from the bundled default seed list, so seed matching can
// localize it. Ground truth mirrors the generated rows exactly.
SyntheticCorpus generate_synthetic_corpus(const SyntheticConfig& cfg);

// Attribute names the generator draws from: the first list ships in the
// default seed pool, the second deliberately does not (feedback tests).
const std::vector<std::string>& generator_seeded_attributes();
const std::vector<std::string>& generator_unseeded_attributes();

// Materializes a corpus under dir/ (pages/, manifest.jsonl,
// labels.jsonl, truth.jsonl) and returns the manifest.
CorpusManifest write_corpus(const SyntheticCorpus& corpus,
                            const std::string& dir);

}  // namespace specmine::dataset
