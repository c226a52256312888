#pragma once

#include <string>
#include <vector>

#include "specmine/classify.hpp"
#include "specmine/dataset.hpp"
#include "specmine/extract.hpp"

namespace specmine::eval {

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    size_t tp = 0;
    size_t fp = 0;
    size_t fn = 0;
};

// Precision/recall from raw counts; each ratio is 0 when its denominator
// is 0, and F1 is 0 when precision + recall is 0.
Prf prf_from_counts(size_t tp, size_t fp, size_t fn);

// Micro-averaged counters, filled page by page.
struct ClassificationCounts {
    size_t tp = 0;
    size_t fp = 0;
    size_t fn = 0;

    // A candidate is correct when its structural path equals a Spec
    // label's path for the page. With ancestor_match (analysis only) a
    // candidate whose path is a proper prefix of a Spec path also
    // counts.
    void add(const classify::CandidateSet& candidates,
             const std::vector<dataset::BlockLabel>& page_labels,
             bool ancestor_match = false);
    Prf prf() const { return prf_from_counts(tp, fp, fn); }
};

struct ExtractionCounts {
    size_t tp = 0;
    size_t fp = 0;
    size_t fn = 0;

    // Set semantics per page over (attribute, value) after whitespace
    // normalization on both sides; exact string match.
    void add(const std::vector<extract::AttrValuePair>& predicted,
             const dataset::GroundTruth& truth);
    Prf prf() const { return prf_from_counts(tp, fp, fn); }
};

Prf score_classification(const classify::CandidateSet& candidates,
                         const std::vector<dataset::BlockLabel>& page_labels,
                         bool ancestor_match = false);
Prf score_extraction(const std::vector<extract::AttrValuePair>& predicted,
                     const dataset::GroundTruth& truth);

struct EvalReport {
    std::string arrangement;
    std::string mode;
    bool feedback = true;
    size_t pages = 0;
    size_t page_failures = 0;
    double avg_candidates = 0.0;
    double avg_classify_seconds = 0.0;
    double avg_extract_seconds = 0.0;
    Prf classification;
    Prf extraction;
    std::vector<std::string> failures;  // "<page_id>: <error>"

    std::string to_json() const;
    static EvalReport from_json(const std::string& line);
    // Human-readable two-column table.
    std::string to_table() const;
};

void save_report(const EvalReport& report, const std::string& path);
EvalReport load_report(const std::string& path);

struct EndToEndInputs {
    const dataset::CorpusManifest* manifest = nullptr;
    std::vector<dataset::BlockLabel> labels;
    std::vector<dataset::GroundTruth> truths;
    const svm::SvmModel* filter = nullptr;
    const cnn::CnnModel* coarse = nullptr;
    const embed::EmbeddingTable* table = nullptr;
    extract::SeedPool seeds;
    extract::ExtractConfig extract_cfg;
    dom::TagBlacklist blacklist = dom::TagBlacklist::standard();
    classify::TraversalOptions traversal;
};

// Full pipeline over a manifest: parse each page, classify under the
// arrangement, extract, score against labels and ground truth.
// Classification and extraction are timed separately (wall clock,
// averaged per page). A failing page is recorded and the run continues.
// Pages are scored in parallel and the per-page results merged in page
// order, except with feedback enabled, where the seed pool chains from
// page to page and the run is sequential. `inputs.seeds` is copied, so
// runs do not bleed feedback into each other.
EvalReport run_end_to_end(const EndToEndInputs& inputs,
                          classify::Arrangement arrangement);

}  // namespace specmine::eval
