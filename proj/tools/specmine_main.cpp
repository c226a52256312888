// Command-line front end: corpus generation, model training, and the
// classification/extraction/evaluation pipeline.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "specmine/classify.hpp"
#include "specmine/cnn.hpp"
#include "specmine/dataset.hpp"
#include "specmine/dom.hpp"
#include "specmine/eval.hpp"
#include "specmine/extract.hpp"
#include "specmine/features.hpp"
#include "specmine/svm.hpp"
#include "specmine/token_embed.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace specmine;

namespace {

// Per-subcommand JSON config file: keys are long option names without
// the leading dashes; explicit command-line flags win over config
// values.
class ConfigFile {
public:
    void attach(CLI::App& cmd) {
        cmd.add_option("--config", path_,
                       "JSON file with defaults for this subcommand");
    }

    template <typename T>
    CLI::Option* opt(CLI::App& cmd, const std::string& flag, T& var,
                     const std::string& help) {
        auto* o = cmd.add_option(flag, var, help);
        std::string key = flag.substr(2);
        known_.push_back(key);
        appliers_.push_back([o, &var, key](const json& j) {
            if (o->count() == 0 && j.contains(key))
                var = j.at(key).get<T>();
        });
        return o;
    }

    void apply() const {
        if (path_.empty()) return;
        std::ifstream in(path_);
        if (!in) throw IoError("cannot open config " + path_);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw FormatError(path_ + ": " + e.what());
        }
        if (!j.is_object())
            throw FormatError(path_ + ": config must be a JSON object");
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (std::find(known_.begin(), known_.end(), key) == known_.end())
                throw FormatError(path_ + ": unknown config key '" + key +
                                  "'");
        }
        try {
            for (const auto& f : appliers_) f(j);
        } catch (const json::exception& e) {
            throw FormatError(path_ + ": " + e.what());
        }
    }

private:
    std::string path_;
    std::vector<std::string> known_;
    std::vector<std::function<void(const json&)>> appliers_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CorpusFiles {
    dataset::CorpusManifest manifest;
    std::vector<dataset::BlockLabel> labels;
    std::vector<dataset::GroundTruth> truths;
};

CorpusFiles load_corpus_dir(const std::string& dir, bool need_truth) {
    CorpusFiles out;
    out.manifest = dataset::load_manifest(
        (fs::path(dir) / "manifest.jsonl").string());
    fs::path labels_path = fs::path(dir) / "labels.jsonl";
    if (fs::exists(labels_path))
        out.labels = dataset::load_labels(labels_path.string());
    fs::path truth_path = fs::path(dir) / "truth.jsonl";
    if (fs::exists(truth_path))
        out.truths = dataset::load_ground_truth(truth_path.string());
    else if (need_truth)
        throw IoError("no truth.jsonl under " + dir);
    return out;
}

std::vector<std::vector<int>> spec_paths_for(
    const std::vector<dataset::BlockLabel>& labels,
    const std::string& page_id) {
    std::vector<std::vector<int>> out;
    for (const auto& l : labels)
        if (l.page_id == page_id && l.label == dataset::BlockClass::Spec)
            out.push_back(l.block_path);
    return out;
}

// Positive and negative candidate blocks of one page, resolved against
// a freshly parsed tree. Harvesting decomposes the spec blocks, so
// positives are grabbed first.
struct PageBlocks {
    dom::Document doc;
    std::vector<dom::DomNode*> positives;
    std::vector<dom::DomNode*> negatives;
};

PageBlocks collect_blocks(const dataset::ManifestEntry& entry,
                          const std::vector<dataset::BlockLabel>& labels,
                          int skip_top) {
    PageBlocks out;
    out.doc = dom::parse_html(slurp(entry.html_path));
    out.doc.page_id = entry.page_id;
    auto paths = spec_paths_for(labels, entry.page_id);
    for (const auto& p : paths) {
        dom::DomNode* node = dom::resolve_path(out.doc.root(), p);
        if (node == nullptr)
            throw PathError(entry.page_id + ": spec path does not resolve");
        out.positives.push_back(node);
    }
    auto negs = dataset::harvest_negative_blocks(out.doc, paths, skip_top);
    for (const auto& l : negs) {
        dom::DomNode* node = dom::resolve_path(out.doc.root(), l.block_path);
        if (node != nullptr) out.negatives.push_back(node);
    }
    return out;
}

int cmd_gen_corpus(const std::string& out_dir, int pages,
                   const std::string& vocab, int rows, int decoys,
                   const std::string& mode, bool no_titles, int bloat,
                   uint64_t seed) {
    dataset::SyntheticConfig cfg;
    cfg.n_pages = pages;
    cfg.rows_per_block = rows;
    cfg.decoys = decoys;
    cfg.titles = !no_titles;
    cfg.mode = extract::column_mode_from_string(mode);
    cfg.bloat = bloat;
    cfg.seed = seed;

    dataset::SyntheticCorpus corpus;
    std::vector<dataset::TagVocab> vocabs;
    if (vocab == "all")
        vocabs.assign(std::begin(dataset::kAllVocabs),
                      std::end(dataset::kAllVocabs));
    else
        vocabs.push_back(dataset::vocab_from_string(vocab));
    for (size_t i = 0; i < vocabs.size(); ++i) {
        cfg.vocab = vocabs[i];
        cfg.seed = seed + i;
        auto part = dataset::generate_synthetic_corpus(cfg);
        for (auto& p : part.pages) corpus.pages.push_back(std::move(p));
        for (auto& l : part.labels) corpus.labels.push_back(std::move(l));
        for (auto& t : part.truths) corpus.truths.push_back(std::move(t));
    }
    dataset::write_corpus(corpus, out_dir);
    json j{{"pages", corpus.pages.size()},
           {"labels", corpus.labels.size()},
           {"dir", out_dir}};
    std::cout << j.dump() << "\n";
    std::printf("wrote %zu pages to %s\n", corpus.pages.size(),
                out_dir.c_str());
    return 0;
}

int cmd_train_filter(const std::string& corpus_dir, const std::string& out,
                     int skip_top, int epochs, double c, uint64_t seed) {
    auto corpus = load_corpus_dir(corpus_dir, false);
    std::vector<svm::SvmSample> samples;
    size_t pos = 0, neg = 0;
    for (const auto& entry : corpus.manifest.entries) {
        auto blocks = collect_blocks(entry, corpus.labels, skip_top);
        for (const auto* b : blocks.positives) {
            samples.push_back(
                {features::compute_filter_features(*b).as_array(), +1});
            ++pos;
        }
        for (const auto* b : blocks.negatives) {
            samples.push_back(
                {features::compute_filter_features(*b).as_array(), -1});
            ++neg;
        }
    }
    svm::SvmConfig cfg;
    cfg.C = c;
    cfg.epochs = epochs;
    cfg.seed = seed;
    auto model = svm::train_svm(samples, cfg);
    svm::save_svm(model, out);
    json j{{"positives", pos},
           {"negatives", neg},
           {"final_objective", model.epoch_objective.back()},
           {"model", out}};
    std::cout << j.dump() << "\n";
    std::printf("trained filter on %zu blocks (%zu spec, %zu non-spec)\n",
                pos + neg, pos, neg);
    return 0;
}

int cmd_train_embeddings(const std::string& corpus_dir,
                         const std::string& out, int dim, int window,
                         int negatives, int epochs, double lr,
                         uint64_t seed) {
    auto corpus = load_corpus_dir(corpus_dir, false);
    std::vector<embed::TokenSequence> seqs;
    for (const auto& entry : corpus.manifest.entries) {
        auto blocks = collect_blocks(entry, corpus.labels, 0);
        for (const auto* b : blocks.positives)
            seqs.push_back(embed::tokenize_block(*b));
        for (const auto* b : blocks.negatives)
            seqs.push_back(embed::tokenize_block(*b));
    }
    embed::EmbedConfig cfg;
    cfg.dim = static_cast<size_t>(dim);
    cfg.window = window;
    cfg.negatives = negatives;
    cfg.epochs = epochs;
    cfg.lr = lr;
    cfg.seed = seed;
    auto table = embed::train_embeddings(seqs, cfg);
    embed::save_embeddings(table, out);
    json j{{"sequences", seqs.size()},
           {"vocab", table.vocab_size()},
           {"dim", table.dim()},
           {"table", out}};
    std::cout << j.dump() << "\n";
    std::printf("trained %zu-token embedding table from %zu sequences\n",
                table.vocab_size(), seqs.size());
    return 0;
}

int cmd_train_coarse(const std::string& corpus_dir,
                     const std::string& embeddings, const std::string& out,
                     int skip_top, int epochs, double lr, double l2,
                     int batch, double val_frac, uint64_t seed) {
    auto corpus = load_corpus_dir(corpus_dir, false);
    auto table = embed::load_embeddings(embeddings);
    std::vector<cnn::CnnSample> samples;
    size_t pos = 0, neg = 0;
    for (const auto& entry : corpus.manifest.entries) {
        auto blocks = collect_blocks(entry, corpus.labels, skip_top);
        for (const auto* b : blocks.positives) {
            samples.push_back({embed::tokenize_block(*b), 1});
            ++pos;
        }
        for (const auto* b : blocks.negatives) {
            samples.push_back({embed::tokenize_block(*b), 0});
            ++neg;
        }
    }
    cnn::TrainConfig cfg;
    cfg.epochs = epochs;
    cfg.lr = lr;
    cfg.l2 = l2;
    cfg.batch_size = batch;
    cfg.validation_fraction = val_frac;
    cfg.seed = seed;
    cfg.arch.embed_dim = table.dim();
    auto model = cnn::train_cnn(samples, table, cfg);
    cnn::save_cnn(model, out);
    json j{{"positives", pos},
           {"negatives", neg},
           {"parameters", model.parameter_count()},
           {"model", out}};
    std::cout << j.dump() << "\n";
    std::printf("trained coarse model (%zu parameters) on %zu blocks\n",
                model.parameter_count(), pos + neg);
    return 0;
}

struct LoadedModels {
    svm::SvmModel filter;
    cnn::CnnModel coarse;
    embed::EmbeddingTable table;
    bool has_filter = false;
    bool has_coarse = false;
};

LoadedModels load_models(classify::Arrangement arr,
                         const std::string& filter_path,
                         const std::string& coarse_path,
                         const std::string& embed_path) {
    LoadedModels m;
    bool need_filter = arr != classify::Arrangement::CoarseOnly;
    bool need_coarse = arr != classify::Arrangement::FilterOnly;
    if (need_filter) {
        if (filter_path.empty())
            throw ValidationError("this arrangement needs --filter");
        m.filter = svm::load_svm(filter_path);
        m.has_filter = true;
    }
    if (need_coarse) {
        if (coarse_path.empty() || embed_path.empty())
            throw ValidationError(
                "this arrangement needs --coarse and --embeddings");
        m.coarse = cnn::load_cnn(coarse_path);
        m.table = embed::load_embeddings(embed_path);
        cnn::verify_pairing(m.coarse, m.table);
        m.has_coarse = true;
    }
    return m;
}

std::vector<dataset::ManifestEntry> gather_pages(
    const std::vector<std::string>& pages, const std::string& corpus_dir) {
    std::vector<dataset::ManifestEntry> entries;
    if (!corpus_dir.empty()) {
        auto corpus = load_corpus_dir(corpus_dir, false);
        entries = corpus.manifest.entries;
    }
    for (const auto& p : pages) {
        dataset::ManifestEntry e;
        e.page_id = fs::path(p).stem().string();
        e.html_path = p;
        entries.push_back(std::move(e));
    }
    if (entries.empty())
        throw ValidationError("give --page and/or --corpus");
    return entries;
}

int cmd_classify(const std::vector<std::string>& pages,
                 const std::string& corpus_dir,
                 const std::string& arrangement,
                 const std::string& filter_path,
                 const std::string& coarse_path,
                 const std::string& embed_path) {
    auto arr = classify::arrangement_from_string(arrangement);
    auto models = load_models(arr, filter_path, coarse_path, embed_path);
    auto entries = gather_pages(pages, corpus_dir);

    size_t total = 0;
    for (const auto& entry : entries) {
        dom::Document doc = dom::parse_html(slurp(entry.html_path));
        doc.page_id = entry.page_id;
        auto candidates = classify::run_arrangement(
            doc, arr, models.has_filter ? &models.filter : nullptr,
            models.has_coarse ? &models.coarse : nullptr,
            models.has_coarse ? &models.table : nullptr);
        for (const auto& c : candidates.blocks) {
            json j{{"page_id", entry.page_id}, {"path", c.path},
                   {"tag", c.tag},             {"filter_margin", c.filter_margin},
                   {"coarse_score", c.coarse_score}};
            std::cout << j.dump() << "\n";
        }
        total += candidates.blocks.size();
    }
    std::printf("%-16s %zu\n%-16s %zu\n", "pages", entries.size(),
                "candidates", total);
    return 0;
}

int cmd_extract(const std::vector<std::string>& pages,
                const std::string& corpus_dir,
                const std::string& arrangement,
                const std::string& filter_path,
                const std::string& coarse_path,
                const std::string& embed_path, const std::string& seeds_file,
                const std::string& mode, const std::string& feedback) {
    auto arr = classify::arrangement_from_string(arrangement);
    auto models = load_models(arr, filter_path, coarse_path, embed_path);
    auto entries = gather_pages(pages, corpus_dir);

    auto seeds = extract::SeedPool::from_file(seeds_file);
    extract::ExtractConfig cfg;
    cfg.mode = extract::column_mode_from_string(mode);
    if (feedback != "on" && feedback != "off")
        throw ValidationError("--feedback must be on or off");
    cfg.feedback = feedback == "on";

    size_t total = 0;
    for (const auto& entry : entries) {
        dom::Document doc = dom::parse_html(slurp(entry.html_path));
        doc.page_id = entry.page_id;
        auto candidates = classify::run_arrangement(
            doc, arr, models.has_filter ? &models.filter : nullptr,
            models.has_coarse ? &models.coarse : nullptr,
            models.has_coarse ? &models.table : nullptr);
        auto pairs = extract::extract_specifications(candidates, seeds, cfg,
                                                     entry.page_id);
        for (const auto& p : pairs) {
            json j{{"page_id", p.page_id},
                   {"attribute", p.attribute},
                   {"value", p.value}};
            std::cout << j.dump() << "\n";
        }
        total += pairs.size();
    }
    std::printf("%-16s %zu\n%-16s %zu\n%-16s %zu -> %zu\n", "pages",
                entries.size(), "pairs", total, "seed pool",
                seeds.initial_size(), seeds.size());
    return 0;
}

int cmd_eval(const std::string& corpus_dir, const std::string& arrangement,
             const std::string& filter_path, const std::string& coarse_path,
             const std::string& embed_path, const std::string& seeds_file,
             const std::string& mode, const std::string& feedback,
             const std::string& out_path) {
    auto corpus = load_corpus_dir(corpus_dir, true);

    eval::EndToEndInputs inputs;
    inputs.manifest = &corpus.manifest;
    inputs.labels = corpus.labels;
    inputs.truths = corpus.truths;
    inputs.seeds = extract::SeedPool::from_file(seeds_file);
    inputs.extract_cfg.mode = extract::column_mode_from_string(mode);
    if (feedback != "on" && feedback != "off")
        throw ValidationError("--feedback must be on or off");
    inputs.extract_cfg.feedback = feedback == "on";

    std::vector<classify::Arrangement> arrangements;
    if (arrangement == "all")
        arrangements = {classify::Arrangement::FilterOnly,
                        classify::Arrangement::CoarseOnly,
                        classify::Arrangement::Cascade};
    else
        arrangements = {classify::arrangement_from_string(arrangement)};

    std::ofstream out;
    if (!out_path.empty()) {
        out.open(out_path);
        if (!out) throw IoError("cannot write " + out_path);
    }
    for (auto arr : arrangements) {
        auto models = load_models(arr, filter_path, coarse_path, embed_path);
        eval::EndToEndInputs run = inputs;
        run.filter = models.has_filter ? &models.filter : nullptr;
        run.coarse = models.has_coarse ? &models.coarse : nullptr;
        run.table = models.has_coarse ? &models.table : nullptr;
        auto report = eval::run_end_to_end(run, arr);
        std::cout << report.to_json() << "\n";
        std::cout << report.to_table();
        if (out) out << report.to_json() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Product specification mining: block classification and "
                 "attribute-value extraction"};
    app.require_subcommand(1);

    // gen-corpus
    auto* gen = app.add_subcommand("gen-corpus",
                                   "Generate a synthetic labeled corpus");
    ConfigFile gen_cfg;
    gen_cfg.attach(*gen);
    std::string gen_out, gen_vocab = "all", gen_mode = "two-col";
    int gen_pages = 50, gen_rows = 6, gen_decoys = 3, gen_bloat = 0;
    uint64_t gen_seed = 1;
    bool gen_no_titles = false;
    gen_cfg.opt(*gen, "--out", gen_out, "Output directory")->required();
    gen_cfg.opt(*gen, "--pages", gen_pages, "Pages per vocabulary");
    gen_cfg.opt(*gen, "--vocab", gen_vocab,
                "ul-div|dl-dt-span|div-span|table|all");
    gen_cfg.opt(*gen, "--rows", gen_rows, "Spec rows per block");
    gen_cfg.opt(*gen, "--decoys", gen_decoys, "Decoy blocks per page");
    gen_cfg.opt(*gen, "--mode", gen_mode, "two-col|four-col");
    gen_cfg.opt(*gen, "--bloat", gen_bloat, "Extra filler nodes per page");
    gen_cfg.opt(*gen, "--seed", gen_seed, "RNG seed");
    gen->add_flag("--no-titles", gen_no_titles, "Omit block title rows");

    // train-filter
    auto* tf = app.add_subcommand("train-filter",
                                  "Train the filter SVM on a corpus");
    ConfigFile tf_cfg;
    tf_cfg.attach(*tf);
    std::string tf_corpus, tf_out;
    int tf_skip = dataset::kDefaultSkipTop, tf_epochs = 50;
    double tf_c = 1.0;
    uint64_t tf_seed = 1;
    tf_cfg.opt(*tf, "--corpus", tf_corpus, "Corpus directory")->required();
    tf_cfg.opt(*tf, "--out", tf_out, "Model output path")->required();
    tf_cfg.opt(*tf, "--skip-top", tf_skip,
               "Drop this many top-of-tree harvested negatives");
    tf_cfg.opt(*tf, "--epochs", tf_epochs, "Training epochs");
    tf_cfg.opt(*tf, "--c", tf_c, "SVM regularization constant C");
    tf_cfg.opt(*tf, "--seed", tf_seed, "RNG seed");

    // train-embeddings
    auto* te = app.add_subcommand("train-embeddings",
                                  "Train token embeddings on a corpus");
    ConfigFile te_cfg;
    te_cfg.attach(*te);
    std::string te_corpus, te_out;
    int te_dim = static_cast<int>(embed::kDefaultDim), te_window = 5,
        te_neg = 5, te_epochs = 5;
    double te_lr = 0.025;
    uint64_t te_seed = 1;
    te_cfg.opt(*te, "--corpus", te_corpus, "Corpus directory")->required();
    te_cfg.opt(*te, "--out", te_out, "Table output path")->required();
    te_cfg.opt(*te, "--dim", te_dim, "Embedding dimensions");
    te_cfg.opt(*te, "--window", te_window, "Context window");
    te_cfg.opt(*te, "--negatives", te_neg, "Negative samples per target");
    te_cfg.opt(*te, "--epochs", te_epochs, "Training epochs");
    te_cfg.opt(*te, "--lr", te_lr, "Initial learning rate");
    te_cfg.opt(*te, "--seed", te_seed, "RNG seed");

    // train-coarse
    auto* tc = app.add_subcommand("train-coarse",
                                  "Train the coarse CNN on a corpus");
    ConfigFile tc_cfg;
    tc_cfg.attach(*tc);
    std::string tc_corpus, tc_embed, tc_out;
    int tc_skip = dataset::kDefaultSkipTop, tc_epochs = 10, tc_batch = 2;
    double tc_lr = 1e-5, tc_l2 = 1e-6, tc_val = 0.0;
    uint64_t tc_seed = 1;
    tc_cfg.opt(*tc, "--corpus", tc_corpus, "Corpus directory")->required();
    tc_cfg.opt(*tc, "--embeddings", tc_embed, "Embedding table path")
        ->required();
    tc_cfg.opt(*tc, "--out", tc_out, "Model output path")->required();
    tc_cfg.opt(*tc, "--skip-top", tc_skip,
               "Drop this many top-of-tree harvested negatives");
    tc_cfg.opt(*tc, "--epochs", tc_epochs, "Training epochs");
    tc_cfg.opt(*tc, "--lr", tc_lr, "Adam learning rate");
    tc_cfg.opt(*tc, "--l2", tc_l2, "L2 penalty");
    tc_cfg.opt(*tc, "--batch", tc_batch, "Mini-batch size");
    tc_cfg.opt(*tc, "--val-frac", tc_val, "Validation fraction");
    tc_cfg.opt(*tc, "--seed", tc_seed, "RNG seed");

    // classify
    auto* cl = app.add_subcommand("classify",
                                  "Detect specification blocks in pages");
    ConfigFile cl_cfg;
    cl_cfg.attach(*cl);
    std::vector<std::string> cl_pages;
    std::string cl_corpus, cl_arr = "cascade", cl_filter, cl_coarse,
                cl_embed;
    cl->add_option("--page", cl_pages, "HTML file (repeatable)");
    cl_cfg.opt(*cl, "--corpus", cl_corpus, "Corpus directory");
    cl_cfg.opt(*cl, "--arrangement", cl_arr, "filter|coarse|cascade");
    cl_cfg.opt(*cl, "--filter", cl_filter, "Filter SVM model path");
    cl_cfg.opt(*cl, "--coarse", cl_coarse, "Coarse CNN model path");
    cl_cfg.opt(*cl, "--embeddings", cl_embed, "Embedding table path");

    // extract
    auto* ex = app.add_subcommand(
        "extract", "Extract attribute-value pairs from pages");
    ConfigFile ex_cfg;
    ex_cfg.attach(*ex);
    std::vector<std::string> ex_pages;
    std::string ex_corpus, ex_arr = "cascade", ex_filter, ex_coarse,
                ex_embed, ex_seeds = "data/seeds_default.txt",
                ex_mode = "two-col", ex_feedback = "on";
    ex->add_option("--page", ex_pages, "HTML file (repeatable)");
    ex_cfg.opt(*ex, "--corpus", ex_corpus, "Corpus directory");
    ex_cfg.opt(*ex, "--arrangement", ex_arr, "filter|coarse|cascade");
    ex_cfg.opt(*ex, "--filter", ex_filter, "Filter SVM model path");
    ex_cfg.opt(*ex, "--coarse", ex_coarse, "Coarse CNN model path");
    ex_cfg.opt(*ex, "--embeddings", ex_embed, "Embedding table path");
    ex_cfg.opt(*ex, "--seeds-file", ex_seeds, "Seed attribute list");
    ex_cfg.opt(*ex, "--mode", ex_mode, "two-col|four-col");
    ex_cfg.opt(*ex, "--feedback", ex_feedback, "on|off");

    // eval
    auto* ev = app.add_subcommand("eval",
                                  "End-to-end evaluation over a corpus");
    ConfigFile ev_cfg;
    ev_cfg.attach(*ev);
    std::string ev_corpus, ev_arr = "all", ev_filter, ev_coarse, ev_embed,
                ev_seeds = "data/seeds_default.txt", ev_mode = "two-col",
                ev_feedback = "on", ev_out;
    ev_cfg.opt(*ev, "--corpus", ev_corpus, "Corpus directory")->required();
    ev_cfg.opt(*ev, "--arrangement", ev_arr, "filter|coarse|cascade|all");
    ev_cfg.opt(*ev, "--filter", ev_filter, "Filter SVM model path");
    ev_cfg.opt(*ev, "--coarse", ev_coarse, "Coarse CNN model path");
    ev_cfg.opt(*ev, "--embeddings", ev_embed, "Embedding table path");
    ev_cfg.opt(*ev, "--seeds-file", ev_seeds, "Seed attribute list");
    ev_cfg.opt(*ev, "--mode", ev_mode, "two-col|four-col");
    ev_cfg.opt(*ev, "--feedback", ev_feedback, "on|off");
    ev_cfg.opt(*ev, "--out", ev_out, "Report output path (JSONL)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            gen_cfg.apply();
            return cmd_gen_corpus(gen_out, gen_pages, gen_vocab, gen_rows,
                                  gen_decoys, gen_mode, gen_no_titles,
                                  gen_bloat, gen_seed);
        }
        if (tf->parsed()) {
            tf_cfg.apply();
            return cmd_train_filter(tf_corpus, tf_out, tf_skip, tf_epochs,
                                    tf_c, tf_seed);
        }
        if (te->parsed()) {
            te_cfg.apply();
            return cmd_train_embeddings(te_corpus, te_out, te_dim, te_window,
                                        te_neg, te_epochs, te_lr, te_seed);
        }
        if (tc->parsed()) {
            tc_cfg.apply();
            return cmd_train_coarse(tc_corpus, tc_embed, tc_out, tc_skip,
                                    tc_epochs, tc_lr, tc_l2, tc_batch,
                                    tc_val, tc_seed);
        }
        if (cl->parsed()) {
            cl_cfg.apply();
            return cmd_classify(cl_pages, cl_corpus, cl_arr, cl_filter,
                                cl_coarse, cl_embed);
        }
        if (ex->parsed()) {
            ex_cfg.apply();
            return cmd_extract(ex_pages, ex_corpus, ex_arr, ex_filter,
                               ex_coarse, ex_embed, ex_seeds, ex_mode,
                               ex_feedback);
        }
        if (ev->parsed()) {
            ev_cfg.apply();
            return cmd_eval(ev_corpus, ev_arr, ev_filter, ev_coarse,
                            ev_embed, ev_seeds, ev_mode, ev_feedback,
                            ev_out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
