#include "specmine/eval.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "specmine/serial.hpp"
#include "specmine/text.hpp"

namespace specmine::eval {

using nlohmann::json;

Prf prf_from_counts(size_t tp, size_t fp, size_t fn) {
    Prf out;
    out.tp = tp;
    out.fp = fp;
    out.fn = fn;
    if (tp + fp > 0)
        out.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn > 0)
        out.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (out.precision + out.recall > 0)
        out.f1 = 2.0 * out.precision * out.recall /
                 (out.precision + out.recall);
    return out;
}

namespace {

bool is_prefix(const std::vector<int>& prefix, const std::vector<int>& path) {
    if (prefix.size() > path.size()) return false;
    return std::equal(prefix.begin(), prefix.end(), path.begin());
}

}  // namespace

void ClassificationCounts::add(
    const classify::CandidateSet& candidates,
    const std::vector<dataset::BlockLabel>& page_labels, bool ancestor_match) {
    std::vector<const std::vector<int>*> spec_paths;
    for (const auto& l : page_labels)
        if (l.label == dataset::BlockClass::Spec)
            spec_paths.push_back(&l.block_path);

    std::vector<bool> found(spec_paths.size(), false);
    for (const auto& cand : candidates.blocks) {
        bool hit = false;
        for (size_t i = 0; i < spec_paths.size(); ++i) {
            bool match = cand.path == *spec_paths[i] ||
                         (ancestor_match && is_prefix(cand.path,
                                                      *spec_paths[i]));
            if (match) {
                if (!found[i]) {
                    found[i] = true;
                    ++tp;
                }
                hit = true;
                break;
            }
        }
        if (!hit) ++fp;
    }
    for (bool f : found)
        if (!f) ++fn;
}

void ExtractionCounts::add(
    const std::vector<extract::AttrValuePair>& predicted,
    const dataset::GroundTruth& truth) {
    std::set<std::pair<std::string, std::string>> got, want;
    for (const auto& p : predicted)
        got.insert({text::normalize_ws(p.attribute),
                    text::normalize_ws(p.value)});
    for (const auto& [a, v] : truth.pairs)
        want.insert({text::normalize_ws(a), text::normalize_ws(v)});
    for (const auto& p : got)
        want.count(p) ? ++tp : ++fp;
    for (const auto& p : want)
        if (!got.count(p)) ++fn;
}

Prf score_classification(const classify::CandidateSet& candidates,
                         const std::vector<dataset::BlockLabel>& page_labels,
                         bool ancestor_match) {
    ClassificationCounts counts;
    counts.add(candidates, page_labels, ancestor_match);
    return counts.prf();
}

Prf score_extraction(const std::vector<extract::AttrValuePair>& predicted,
                     const dataset::GroundTruth& truth) {
    ExtractionCounts counts;
    counts.add(predicted, truth);
    return counts.prf();
}

namespace {

json prf_to_json(const Prf& p) {
    return json{{"precision", p.precision}, {"recall", p.recall},
                {"f1", p.f1},               {"tp", p.tp},
                {"fp", p.fp},               {"fn", p.fn}};
}

Prf prf_from_json(const json& j) {
    Prf p;
    p.precision = j.at("precision").get<double>();
    p.recall = j.at("recall").get<double>();
    p.f1 = j.at("f1").get<double>();
    p.tp = j.at("tp").get<size_t>();
    p.fp = j.at("fp").get<size_t>();
    p.fn = j.at("fn").get<size_t>();
    return p;
}

}  // namespace

std::string EvalReport::to_json() const {
    json j{{"v", 1},
           {"arrangement", arrangement},
           {"mode", mode},
           {"feedback", feedback},
           {"pages", pages},
           {"page_failures", page_failures},
           {"avg_candidates", avg_candidates},
           {"avg_classify_seconds", avg_classify_seconds},
           {"avg_extract_seconds", avg_extract_seconds},
           {"classification", prf_to_json(classification)},
           {"extraction", prf_to_json(extraction)},
           {"failures", failures}};
    return j.dump();
}

EvalReport EvalReport::from_json(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad report record: ") + e.what());
    }
    if (!j.is_object() || j.value("v", 0) != 1)
        throw FormatError("unsupported report version");
    EvalReport r;
    try {
        r.arrangement = j.at("arrangement").get<std::string>();
        r.mode = j.at("mode").get<std::string>();
        r.feedback = j.at("feedback").get<bool>();
        r.pages = j.at("pages").get<size_t>();
        r.page_failures = j.at("page_failures").get<size_t>();
        r.avg_candidates = j.at("avg_candidates").get<double>();
        r.avg_classify_seconds = j.at("avg_classify_seconds").get<double>();
        r.avg_extract_seconds = j.at("avg_extract_seconds").get<double>();
        r.classification = prf_from_json(j.at("classification"));
        r.extraction = prf_from_json(j.at("extraction"));
        r.failures = j.at("failures").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad report record: ") + e.what());
    }
    return r;
}

std::string EvalReport::to_table() const {
    std::ostringstream out;
    char buf[128];
    auto row = [&](const char* k, const std::string& v) {
        std::snprintf(buf, sizeof buf, "%-28s %s\n", k, v.c_str());
        out << buf;
    };
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.4f", v);
        return std::string(buf);
    };
    row("arrangement", arrangement);
    row("mode", mode);
    row("feedback", feedback ? "on" : "off");
    row("pages", std::to_string(pages));
    row("page failures", std::to_string(page_failures));
    row("avg candidates/page", num(avg_candidates));
    row("avg classify time (s)", num(avg_classify_seconds));
    row("avg extract time (s)", num(avg_extract_seconds));
    row("classification precision", num(classification.precision));
    row("classification recall", num(classification.recall));
    row("classification f1", num(classification.f1));
    row("extraction precision", num(extraction.precision));
    row("extraction recall", num(extraction.recall));
    row("extraction f1", num(extraction.f1));
    return out.str();
}

void save_report(const EvalReport& report, const std::string& path) {
    auto out = serial::open_out(path);
    out << report.to_json() << '\n';
}

EvalReport load_report(const std::string& path) {
    auto in = serial::open_in(path);
    std::string line = serial::read_line(in, path);
    return EvalReport::from_json(line);
}

namespace {

// One page's contribution to a report; merging these is associative and
// commutative except for failure messages, which are merged in page
// order to keep reports deterministic.
struct PageOutcome {
    bool ok = false;
    std::string failure;
    size_t candidates = 0;
    double classify_s = 0.0;
    double extract_s = 0.0;
    ClassificationCounts ccounts;
    ExtractionCounts ecounts;
};

PageOutcome score_page(const EndToEndInputs& inputs,
                       classify::Arrangement arrangement,
                       const dataset::ManifestEntry& entry,
                       extract::SeedPool& seeds) {
    using clock = std::chrono::steady_clock;
    PageOutcome out;
    try {
        std::ifstream in(entry.html_path, std::ios::binary);
        if (!in) throw IoError("cannot open " + entry.html_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        dom::Document doc = dom::parse_html(buf.str());
        doc.page_id = entry.page_id;
        doc.source_path = entry.html_path;

        auto t0 = clock::now();
        auto candidates = classify::run_arrangement(
            doc, arrangement, inputs.filter, inputs.coarse, inputs.table,
            inputs.blacklist, inputs.traversal);
        auto t1 = clock::now();
        auto pairs = extract::extract_specifications(
            candidates, seeds, inputs.extract_cfg, entry.page_id,
            inputs.blacklist);
        auto t2 = clock::now();

        out.classify_s = std::chrono::duration<double>(t1 - t0).count();
        out.extract_s = std::chrono::duration<double>(t2 - t1).count();
        out.candidates = candidates.blocks.size();

        std::vector<dataset::BlockLabel> page_labels;
        for (const auto& l : inputs.labels)
            if (l.page_id == entry.page_id) page_labels.push_back(l);
        out.ccounts.add(candidates, page_labels);

        for (const auto& t : inputs.truths)
            if (t.page_id == entry.page_id) {
                out.ecounts.add(pairs, t);
                break;
            }
        out.ok = true;
    } catch (const Error& e) {
        out.failure = entry.page_id + ": " + e.what();
    }
    return out;
}

}  // namespace

EvalReport run_end_to_end(const EndToEndInputs& inputs,
                          classify::Arrangement arrangement) {
    if (inputs.manifest == nullptr)
        throw ValidationError("run_end_to_end needs a manifest");
    const auto& entries = inputs.manifest->entries;
    std::vector<PageOutcome> outcomes(entries.size());

    if (inputs.extract_cfg.feedback) {
        // Feedback chains the seed pool from page to page, so ordering
        // matters and the run is sequential.
        extract::SeedPool seeds = inputs.seeds;
        for (size_t i = 0; i < entries.size(); ++i)
            outcomes[i] = score_page(inputs, arrangement, entries[i], seeds);
    } else {
        size_t workers = std::min<size_t>(
            entries.size(),
            std::max(1u, std::thread::hardware_concurrency()));
        std::atomic<size_t> next{0};
        auto work = [&] {
            extract::SeedPool seeds = inputs.seeds;
            for (size_t i = next.fetch_add(1); i < entries.size();
                 i = next.fetch_add(1))
                outcomes[i] =
                    score_page(inputs, arrangement, entries[i], seeds);
        };
        std::vector<std::thread> pool;
        for (size_t w = 0; w + 1 < workers; ++w) pool.emplace_back(work);
        work();
        for (auto& t : pool) t.join();
    }

    EvalReport report;
    report.arrangement = classify::to_string(arrangement);
    report.mode = extract::to_string(inputs.extract_cfg.mode);
    report.feedback = inputs.extract_cfg.feedback;

    ClassificationCounts ccounts;
    ExtractionCounts ecounts;
    double classify_s = 0.0, extract_s = 0.0;
    size_t candidates_total = 0, scored_pages = 0;
    for (const auto& out : outcomes) {
        if (!out.ok) {
            ++report.page_failures;
            report.failures.push_back(out.failure);
            continue;
        }
        ++scored_pages;
        candidates_total += out.candidates;
        classify_s += out.classify_s;
        extract_s += out.extract_s;
        ccounts.tp += out.ccounts.tp;
        ccounts.fp += out.ccounts.fp;
        ccounts.fn += out.ccounts.fn;
        ecounts.tp += out.ecounts.tp;
        ecounts.fp += out.ecounts.fp;
        ecounts.fn += out.ecounts.fn;
    }

    report.pages = entries.size();
    if (scored_pages > 0) {
        double n = static_cast<double>(scored_pages);
        report.avg_candidates = static_cast<double>(candidates_total) / n;
        report.avg_classify_seconds = classify_s / n;
        report.avg_extract_seconds = extract_s / n;
    }
    report.classification = ccounts.prf();
    report.extraction = ecounts.prf();
    return report;
}

}  // namespace specmine::eval
