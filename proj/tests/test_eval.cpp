#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "specmine/dataset.hpp"
#include "specmine/errors.hpp"
#include "specmine/eval.hpp"

using namespace specmine;
using namespace specmine::eval;
namespace fs = std::filesystem;

namespace {

classify::CandidateSet candidates_at(std::vector<std::vector<int>> paths) {
    classify::CandidateSet set;
    for (auto& p : paths) {
        classify::Candidate c;
        c.path = std::move(p);
        set.blocks.push_back(c);
    }
    return set;
}

std::vector<dataset::BlockLabel> spec_labels_at(
    std::vector<std::vector<int>> paths) {
    std::vector<dataset::BlockLabel> out;
    for (auto& p : paths)
        out.push_back({"p", std::move(p), dataset::BlockClass::Spec});
    return out;
}

extract::AttrValuePair pair_of(const std::string& a, const std::string& v) {
    extract::AttrValuePair p;
    p.attribute = a;
    p.value = v;
    return p;
}

std::string tmp_dir(const char* name) {
    auto dir = fs::temp_directory_path() / (std::string("specmine_") + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

// Builds a trained corpus + models in `dir` for end-to-end runs. Small
// but large enough for the models to separate spec from non-spec.
struct TrainedSetup {
    dataset::CorpusManifest manifest;
    std::vector<dataset::BlockLabel> labels;
    std::vector<dataset::GroundTruth> truths;
    svm::SvmModel filter;
    cnn::CnnModel coarse;
    embed::EmbeddingTable table;
};

TrainedSetup make_setup(const std::string& dir, int pages, uint64_t seed) {
    dataset::SyntheticConfig cfg;
    cfg.n_pages = pages;
    cfg.vocab = dataset::TagVocab::UlDiv;
    cfg.seed = seed;
    auto corpus = dataset::generate_synthetic_corpus(cfg);

    TrainedSetup s;
    s.manifest = dataset::write_corpus(corpus, dir);
    s.labels = corpus.labels;
    s.truths = corpus.truths;

    // Collect training blocks.
    std::vector<svm::SvmSample> svm_data;
    std::vector<embed::TokenSequence> token_corpus;
    std::vector<cnn::CnnSample> cnn_data;
    for (const auto& page : corpus.pages) {
        auto doc = dom::parse_html(page.html);
        auto* spec = dom::resolve_path(doc.root(), page.spec_path);
        REQUIRE(spec != nullptr);
        auto feats = features::compute_filter_features(*spec);
        svm_data.push_back({feats.as_array(), +1});
        auto seq = embed::tokenize_block(*spec);
        token_corpus.push_back(seq);
        cnn_data.push_back({seq, 1});

        auto negs = dataset::harvest_negative_blocks(
            doc, {page.spec_path}, dataset::kDefaultSkipTop);
        auto fresh = dom::parse_html(page.html);
        for (const auto& l : negs) {
            auto* n = dom::resolve_path(fresh.root(), l.block_path);
            REQUIRE(n != nullptr);
            auto nf = features::compute_filter_features(*n);
            svm_data.push_back({nf.as_array(), -1});
            auto nseq = embed::tokenize_block(*n);
            token_corpus.push_back(nseq);
            cnn_data.push_back({nseq, 0});
        }
    }

    s.filter = svm::train_svm(svm_data, svm::SvmConfig{});

    embed::EmbedConfig ec;
    ec.dim = 24;
    ec.epochs = 3;
    s.table = embed::train_embeddings(token_corpus, ec);

    cnn::TrainConfig tc;
    tc.arch.embed_dim = 24;
    tc.arch.filters = 8;
    tc.arch.num_layers = 2;
    tc.epochs = 200;
    tc.lr = 1e-3;
    tc.seed = 3;
    s.coarse = cnn::train_cnn(cnn_data, s.table, tc);
    return s;
}

EndToEndInputs inputs_of(const TrainedSetup& s) {
    EndToEndInputs in;
    in.manifest = &s.manifest;
    in.labels = s.labels;
    in.truths = s.truths;
    in.filter = &s.filter;
    in.coarse = &s.coarse;
    in.table = &s.table;
    in.seeds = extract::SeedPool(dataset::generator_seeded_attributes());
    return in;
}

}  // namespace

TEST_CASE("prf_from_counts handles the conventions") {
    auto perfect = prf_from_counts(3, 0, 0);
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.f1 == 1.0);

    auto nothing = prf_from_counts(0, 0, 2);
    CHECK(nothing.precision == 0.0);
    CHECK(nothing.recall == 0.0);
    CHECK(nothing.f1 == 0.0);

    auto half = prf_from_counts(1, 1, 1);
    CHECK(half.precision == doctest::Approx(0.5));
    CHECK(half.recall == doctest::Approx(0.5));
    CHECK(half.f1 == doctest::Approx(0.5));

    auto skew = prf_from_counts(3, 1, 2);
    CHECK(skew.precision == doctest::Approx(0.75));
    CHECK(skew.recall == doctest::Approx(0.6));
    CHECK(skew.f1 == doctest::Approx(2 * 0.75 * 0.6 / (0.75 + 0.6)));
}

TEST_CASE("classification counts match paths exactly") {
    ClassificationCounts c;
    c.add(candidates_at({{0, 1}}), spec_labels_at({{0, 1}}));
    CHECK(c.tp == 1);
    CHECK(c.fp == 0);
    CHECK(c.fn == 0);

    c = {};
    c.add(candidates_at({{0, 2}}), spec_labels_at({{0, 1}}));
    CHECK(c.tp == 0);
    CHECK(c.fp == 1);
    CHECK(c.fn == 1);

    c = {};
    c.add(candidates_at({}), spec_labels_at({{0, 1}, {0, 2}}));
    CHECK(c.fn == 2);

    // NonSpec labels never contribute fn.
    c = {};
    std::vector<dataset::BlockLabel> mixed = {
        {"p", {0, 1}, dataset::BlockClass::Spec},
        {"p", {0, 5}, dataset::BlockClass::NonSpec},
    };
    c.add(candidates_at({{0, 1}}), mixed);
    CHECK(c.tp == 1);
    CHECK(c.fn == 0);
}

TEST_CASE("each spec label is credited at most once") {
    ClassificationCounts c;
    c.add(candidates_at({{0, 1}, {0, 1}}), spec_labels_at({{0, 1}}));
    CHECK(c.tp == 1);
    CHECK(c.fn == 0);
    // The duplicate neither true- nor false-positive by path identity.
    CHECK(c.fp == 0);
}

TEST_CASE("ancestor_match credits proper prefixes") {
    ClassificationCounts strict;
    strict.add(candidates_at({{0}}), spec_labels_at({{0, 1}}));
    CHECK(strict.tp == 0);
    CHECK(strict.fp == 1);

    ClassificationCounts loose;
    loose.add(candidates_at({{0}}), spec_labels_at({{0, 1}}), true);
    CHECK(loose.tp == 1);
    CHECK(loose.fp == 0);
    CHECK(loose.fn == 0);

    // A non-prefix stays wrong even in ancestor mode.
    ClassificationCounts wrong;
    wrong.add(candidates_at({{1}}), spec_labels_at({{0, 1}}), true);
    CHECK(wrong.tp == 0);
    CHECK(wrong.fp == 1);
}

TEST_CASE("extraction counts use normalized set semantics") {
    dataset::GroundTruth truth{
        "p", {{"Brand", "LG"}, {"Color", "Steel"}, {"Width", "60 cm"},
              {"Depth", "55 cm"}}};

    SUBCASE("identical sets are perfect") {
        std::vector<extract::AttrValuePair> got = {
            pair_of("Brand", "LG"), pair_of("Color", "Steel"),
            pair_of("Width", "60 cm"), pair_of("Depth", "55 cm")};
        auto prf = score_extraction(got, truth);
        CHECK(prf.precision == 1.0);
        CHECK(prf.recall == 1.0);
    }
    SUBCASE("whitespace differences are forgiven") {
        std::vector<extract::AttrValuePair> got = {
            pair_of(" Brand ", "LG"), pair_of("Color", "Steel  "),
            pair_of("Width", "60  cm"), pair_of("Depth", "55 cm")};
        auto prf = score_extraction(got, truth);
        CHECK(prf.precision == 1.0);
        CHECK(prf.recall == 1.0);
    }
    SUBCASE("an off-by-one value is both fp and fn") {
        std::vector<extract::AttrValuePair> got = {
            pair_of("Brand", "LG"), pair_of("Color", "Stee"),
            pair_of("Width", "60 cm"), pair_of("Depth", "55 cm")};
        ExtractionCounts c;
        c.add(got, truth);
        CHECK(c.tp == 3);
        CHECK(c.fp == 1);
        CHECK(c.fn == 1);
    }
    SUBCASE("three of four plus a spurious pair") {
        std::vector<extract::AttrValuePair> got = {
            pair_of("Brand", "LG"), pair_of("Color", "Steel"),
            pair_of("Width", "60 cm"), pair_of("Bogus", "x")};
        auto prf = score_extraction(got, truth);
        CHECK(prf.precision == doctest::Approx(0.75));
        CHECK(prf.recall == doctest::Approx(0.75));
    }
    SUBCASE("duplicate predictions count once") {
        std::vector<extract::AttrValuePair> got = {
            pair_of("Brand", "LG"), pair_of("Brand", "LG")};
        ExtractionCounts c;
        c.add(got, truth);
        CHECK(c.tp == 1);
        CHECK(c.fp == 0);
        CHECK(c.fn == 3);
    }
}

TEST_CASE("f1 recomputes from precision and recall") {
    for (size_t tp : {0u, 1u, 3u, 10u})
        for (size_t fp : {0u, 2u, 5u})
            for (size_t fn : {0u, 1u, 4u}) {
                auto prf = prf_from_counts(tp, fp, fn);
                double want = prf.precision + prf.recall == 0
                                  ? 0.0
                                  : 2 * prf.precision * prf.recall /
                                        (prf.precision + prf.recall);
                CHECK(prf.f1 == doctest::Approx(want));
                CHECK(prf.tp == tp);
                CHECK(prf.fp == fp);
                CHECK(prf.fn == fn);
            }
}

TEST_CASE("reports round-trip through json") {
    EvalReport r;
    r.arrangement = "cascade";
    r.mode = "two-col";
    r.feedback = false;
    r.pages = 12;
    r.page_failures = 1;
    r.avg_candidates = 1.25;
    r.avg_classify_seconds = 0.011;
    r.avg_extract_seconds = 0.002;
    r.classification = prf_from_counts(10, 2, 1);
    r.extraction = prf_from_counts(50, 5, 8);
    r.failures = {"p7: parse error"};

    auto back = EvalReport::from_json(r.to_json());
    CHECK(back.arrangement == r.arrangement);
    CHECK(back.mode == r.mode);
    CHECK(back.feedback == r.feedback);
    CHECK(back.pages == r.pages);
    CHECK(back.page_failures == r.page_failures);
    CHECK(back.avg_candidates == r.avg_candidates);
    CHECK(back.avg_classify_seconds == r.avg_classify_seconds);
    CHECK(back.avg_extract_seconds == r.avg_extract_seconds);
    CHECK(back.classification.tp == r.classification.tp);
    CHECK(back.classification.f1 ==
          doctest::Approx(r.classification.f1));
    CHECK(back.extraction.fn == r.extraction.fn);
    CHECK(back.failures == r.failures);

    CHECK_THROWS_AS(EvalReport::from_json("{oops"), FormatError);
    CHECK_THROWS_AS(EvalReport::from_json("{\"v\":9}"), FormatError);

    auto dir = tmp_dir("report_rt");
    auto path = dir + "/report.jsonl";
    save_report(r, path);
    auto loaded = load_report(path);
    CHECK(loaded.pages == r.pages);
    CHECK(loaded.failures == r.failures);
    fs::remove_all(dir);

    auto table = r.to_table();
    CHECK(table.find("cascade") != std::string::npos);
    CHECK(table.find("precision") != std::string::npos);
}

TEST_CASE("end-to-end cascade run scores a synthetic corpus") {
    auto dir = tmp_dir("e2e_cascade");
    auto setup = make_setup(dir, 8, 101);
    auto in = inputs_of(setup);

    auto report = run_end_to_end(in, classify::Arrangement::Cascade);
    CHECK(report.arrangement == "cascade");
    CHECK(report.pages == 8);
    CHECK(report.page_failures == 0);
    CHECK(report.classification.f1 == doctest::Approx(1.0));
    CHECK(report.extraction.f1 == doctest::Approx(1.0));
    CHECK(report.avg_candidates == doctest::Approx(1.0));
    CHECK(report.avg_classify_seconds >= 0.0);
    CHECK(report.avg_extract_seconds >= 0.0);

    // Same inputs, feedback off: parallel path, same perfect result on
    // this corpus because every attribute is already seeded.
    in.extract_cfg.feedback = false;
    auto par = run_end_to_end(in, classify::Arrangement::Cascade);
    CHECK(par.classification.f1 == doctest::Approx(1.0));
    CHECK(par.extraction.f1 == doctest::Approx(1.0));
    fs::remove_all(dir);
}

TEST_CASE("filter-only accepts at least as much as the cascade") {
    auto dir = tmp_dir("e2e_filter");
    auto setup = make_setup(dir, 6, 202);
    auto in = inputs_of(setup);

    auto cascade = run_end_to_end(in, classify::Arrangement::Cascade);
    auto filter_only = run_end_to_end(in, classify::Arrangement::FilterOnly);
    auto coarse_only = run_end_to_end(in, classify::Arrangement::CoarseOnly);
    CHECK(filter_only.arrangement == "filter");
    CHECK(coarse_only.arrangement == "coarse");
    CHECK(filter_only.avg_candidates >= cascade.avg_candidates - 1e-12);
    CHECK(cascade.classification.recall <=
          filter_only.classification.recall + 1e-12);
    fs::remove_all(dir);
}

TEST_CASE("totals grow with corpus size") {
    std::vector<size_t> tps;
    for (int pages : {2, 6, 12}) {
        auto dir = tmp_dir(("e2e_size_" + std::to_string(pages)).c_str());
        auto setup = make_setup(dir, pages, 303);
        auto in = inputs_of(setup);
        auto report = run_end_to_end(in, classify::Arrangement::Cascade);
        tps.push_back(report.extraction.tp);
        fs::remove_all(dir);
    }
    CHECK(tps[0] < tps[1]);
    CHECK(tps[1] < tps[2]);
}

TEST_CASE("a broken page is recorded and the run continues") {
    auto dir = tmp_dir("e2e_broken");
    auto setup = make_setup(dir, 4, 404);

    // Point one entry at an empty file: the parser throws EmptyInputError
    // and the runner must log it, not die.
    auto bad = dir + "/empty.html";
    std::ofstream(bad) << "";
    auto manifest = setup.manifest;
    manifest.entries[1].html_path = bad;

    auto in = inputs_of(setup);
    in.manifest = &manifest;
    auto report = run_end_to_end(in, classify::Arrangement::Cascade);
    CHECK(report.pages == 4);
    CHECK(report.page_failures == 1);
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].find(manifest.entries[1].page_id) !=
          std::string::npos);
    // The three healthy pages still score.
    CHECK(report.extraction.tp > 0);
    fs::remove_all(dir);
}
