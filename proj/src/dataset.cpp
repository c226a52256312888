#include "specmine/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <unordered_set>

#include "json.hpp"
#include "specmine/serial.hpp"
#include "specmine/text.hpp"

namespace specmine::dataset {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Validation: return "validation";
        case Split::Holdout: return "holdout";
    }
    return "train";
}

Split split_from_string(const std::string& s) {
    if (s == "train") return Split::Train;
    if (s == "validation") return Split::Validation;
    if (s == "holdout") return Split::Holdout;
    throw ValidationError("unknown split: " + s +
                          " (expected train|validation|holdout)");
}

std::string to_string(TagVocab v) {
    switch (v) {
        case TagVocab::UlDiv: return "ul-div";
        case TagVocab::DlDtSpan: return "dl-dt-span";
        case TagVocab::DivSpan: return "div-span";
        case TagVocab::Table: return "table";
    }
    return "ul-div";
}

TagVocab vocab_from_string(const std::string& s) {
    if (s == "ul-div") return TagVocab::UlDiv;
    if (s == "dl-dt-span") return TagVocab::DlDtSpan;
    if (s == "div-span") return TagVocab::DivSpan;
    if (s == "table") return TagVocab::Table;
    throw ValidationError("unknown tag vocabulary: " + s +
                          " (expected ul-div|dl-dt-span|div-span|table)");
}

namespace {

constexpr int kSchemaVersion = 1;

json parse_record(const std::string& line, const std::string& path) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw FormatError(path + ": bad record: " + e.what());
    }
    if (!j.is_object() || j.value("v", 0) != kSchemaVersion)
        throw FormatError(path + ": unsupported record version");
    return j;
}

std::string get_string(const json& j, const char* key,
                       const std::string& path) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
        throw FormatError(path + ": missing field " + key);
    return it->get<std::string>();
}

}  // namespace

void save_manifest(const CorpusManifest& manifest, const std::string& path) {
    auto out = serial::open_out(path);
    for (const auto& e : manifest.entries) {
        json j{{"v", kSchemaVersion},
               {"page_id", e.page_id},
               {"html_path", e.html_path},
               {"split", to_string(e.split)},
               {"source", e.source},
               {"category", e.category}};
        out << j.dump() << '\n';
    }
}

CorpusManifest load_manifest(const std::string& path, bool check_paths) {
    auto in = serial::open_in(path);
    CorpusManifest manifest;
    std::unordered_set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json j = parse_record(line, path);
        ManifestEntry e;
        e.page_id = get_string(j, "page_id", path);
        e.html_path = get_string(j, "html_path", path);
        try {
            e.split = split_from_string(get_string(j, "split", path));
        } catch (const ValidationError& ve) {
            throw FormatError(path + ": " + ve.what());
        }
        e.source = j.value("source", "");
        e.category = j.value("category", "");
        if (e.page_id.empty())
            throw ValidationError(path + ": empty page_id");
        if (!seen.insert(e.page_id).second)
            throw ValidationError(path + ": duplicate page_id " + e.page_id);
        if (check_paths && !fs::exists(e.html_path))
            throw PathError(path + ": missing page file " + e.html_path);
        manifest.entries.push_back(std::move(e));
    }
    return manifest;
}

namespace {

std::string label_to_string(BlockClass c) {
    return c == BlockClass::Spec ? "spec" : "non-spec";
}

BlockClass label_from_string(const std::string& s, const std::string& path) {
    if (s == "spec") return BlockClass::Spec;
    if (s == "non-spec") return BlockClass::NonSpec;
    throw FormatError(path + ": unknown label " + s);
}

}  // namespace

void save_labels(const std::vector<BlockLabel>& labels,
                 const std::string& path) {
    auto out = serial::open_out(path);
    for (const auto& l : labels) {
        json j{{"v", kSchemaVersion},
               {"page_id", l.page_id},
               {"block_path", l.block_path},
               {"label", label_to_string(l.label)}};
        out << j.dump() << '\n';
    }
}

std::vector<BlockLabel> load_labels(const std::string& path) {
    auto in = serial::open_in(path);
    std::vector<BlockLabel> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json j = parse_record(line, path);
        BlockLabel l;
        l.page_id = get_string(j, "page_id", path);
        auto it = j.find("block_path");
        if (it == j.end() || !it->is_array())
            throw FormatError(path + ": missing field block_path");
        for (const auto& v : *it) {
            if (!v.is_number_integer() || v.get<int>() < 0)
                throw FormatError(path + ": bad block_path entry");
            l.block_path.push_back(v.get<int>());
        }
        l.label = label_from_string(get_string(j, "label", path), path);
        labels.push_back(std::move(l));
    }
    return labels;
}

void save_ground_truth(const std::vector<GroundTruth>& truths,
                       const std::string& path) {
    auto out = serial::open_out(path);
    for (const auto& t : truths) {
        json pairs = json::array();
        for (const auto& [a, v] : t.pairs) pairs.push_back({a, v});
        json j{{"v", kSchemaVersion}, {"page_id", t.page_id},
               {"pairs", pairs}};
        out << j.dump() << '\n';
    }
}

std::vector<GroundTruth> load_ground_truth(const std::string& path) {
    auto in = serial::open_in(path);
    std::vector<GroundTruth> truths;
    std::unordered_set<std::string> page_index;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json j = parse_record(line, path);
        std::string page_id = get_string(j, "page_id", path);
        auto it = j.find("pairs");
        if (it == j.end() || !it->is_array())
            throw FormatError(path + ": missing field pairs");

        GroundTruth* t = nullptr;
        for (auto& existing : truths)
            if (existing.page_id == page_id) t = &existing;
        if (t == nullptr) {
            truths.push_back({page_id, {}});
            t = &truths.back();
        }
        for (const auto& p : *it) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_string() ||
                !p[1].is_string())
                throw FormatError(path + ": bad pair record for " + page_id);
            std::string attr = p[0].get<std::string>();
            std::string value = p[1].get<std::string>();
            if (text::normalize_ws(attr).empty())
                throw ValidationError(path + ": empty attribute for page " +
                                      page_id);
            if (text::normalize_ws(value).empty())
                throw ValidationError(path + ": empty value for attribute '" +
                                      attr + "' on page " + page_id);
            auto pair = std::make_pair(std::move(attr), std::move(value));
            if (std::find(t->pairs.begin(), t->pairs.end(), pair) !=
                t->pairs.end()) {
                std::cerr << "warning: " << path << ": duplicate pair ('"
                          << pair.first << "', '" << pair.second
                          << "') on page " << page_id << " collapsed\n";
                continue;
            }
            t->pairs.push_back(std::move(pair));
        }
    }
    return truths;
}

std::vector<BlockLabel> harvest_negative_blocks(
    dom::Document& doc, const std::vector<std::vector<int>>& spec_paths,
    int skip_top, const dom::TagBlacklist& blacklist,
    const classify::TraversalOptions& opts) {
    if (skip_top < 0) throw ValidationError("skip_top must be >= 0");

    for (const auto& path : spec_paths) {
        dom::DomNode* block = dom::resolve_path(doc.root(), path);
        if (block == nullptr) {
            std::string p;
            for (int i : path) p += "/" + std::to_string(i);
            throw PathError("spec path does not resolve: " +
                            (p.empty() ? "/" : p));
        }
        doc.decompose(*block);
    }

    std::vector<BlockLabel> harvested;
    std::vector<dom::DomNode*> stack{&doc.body()};
    while (!stack.empty()) {
        dom::DomNode* node = stack.back();
        stack.pop_back();
        if (!node->is_element() || blacklist.contains(node->tag)) continue;
        if (classify::is_candidate_block(*node, blacklist, opts))
            harvested.push_back(
                {doc.page_id, dom::node_path(*node), BlockClass::NonSpec});
        for (auto it = node->children.rbegin(); it != node->children.rend();
             ++it)
            stack.push_back(*it);
    }
    if (static_cast<size_t>(skip_top) >= harvested.size()) return {};
    harvested.erase(harvested.begin(), harvested.begin() + skip_top);
    return harvested;
}

namespace {

// Attribute names present in data/seeds_default.txt.
const std::vector<std::string> kSeededAttrs = {
    "Brand",      "Model",        "Color",    "Capacity", "Material",
    "Weight",     "Voltage",      "Wattage",  "Warranty", "Width",
    "Height",     "Depth",        "Display",  "Resolution",
    "Battery",    "Processor",    "Memory",   "Storage",
    "Connectivity", "Energy Rating",
};

// Deliberately absent from the default seed pool; feedback has to learn
// them.
const std::vector<std::string> kUnseededAttrs = {
    "Spin Speed",  "Wash Method",  "Door Type",     "Motor Type",
    "Drum Size",   "Panel Type",   "Defrost Type",  "Tub Material",
    "Control Type", "Ice Dispenser",
};

const std::vector<std::string> kValues = {
    "LG",         "Samsung",   "Bosch",          "Whirlpool", "Arcelik",
    "Red",        "Black",     "Silver",         "White",     "6.2 kg",
    "7 kg",       "120 L",     "Stainless Steel", "Plastic",  "220 V",
    "110 V",      "700 W",     "5 Years",        "2 Years",   "Top Load",
    "Front Load", "1080p",     "4K UHD",         "Inverter",  "Direct Drive",
    "Class A",    "Dual Core", "8 GB",           "256 GB",    "Digital",
};

const std::vector<std::string> kProducts = {
    "Aurora Washing Machine X200", "Nimbus Refrigerator R18",
    "Vertex Laptop Pro 14",        "Pulse Soundbar S5",
    "Orion Microwave M20",         "Zephyr Air Conditioner A12",
};

const std::vector<std::string> kMenuItems = {
    "Home",   "Electronics", "Appliances", "Kitchen", "Laundry",
    "Deals",  "Support",     "Contact",    "Stores",  "Brands",
    "Outlet", "New Arrivals",
};

const std::vector<std::string> kTitles = {
    "Specifications", "Product Details", "Technical Details",
};

const std::vector<std::string> kReviewHeads = {
    "Great value",        "Works as expected",
    "Solid build quality", "Happy with this purchase",
};

size_t pick_index(std::mt19937_64& rng, size_t n) {
    return static_cast<size_t>(rng() % n);
}

const std::string& pick(std::mt19937_64& rng,
                        const std::vector<std::string>& pool) {
    return pool[pick_index(rng, pool.size())];
}

template <typename T>
void shuffle_vec(std::mt19937_64& rng, std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[pick_index(rng, i)]);
}

// Distinct attribute names for one page: at least three drawn from the
// seeded list (so localization always has anchors), the rest from the
// combined pool.
std::vector<std::string> sample_attrs(std::mt19937_64& rng, size_t n) {
    std::vector<std::string> seeded = kSeededAttrs;
    shuffle_vec(rng, seeded);
    std::vector<std::string> chosen;
    size_t anchors = std::min<size_t>(3, n);
    chosen.assign(seeded.begin(), seeded.begin() + anchors);
    std::vector<std::string> rest(seeded.begin() + anchors, seeded.end());
    rest.insert(rest.end(), kUnseededAttrs.begin(), kUnseededAttrs.end());
    shuffle_vec(rng, rest);
    for (size_t i = 0; chosen.size() < n; ++i) chosen.push_back(rest[i]);
    shuffle_vec(rng, chosen);
    return chosen;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

struct RowCells {
    std::vector<std::string> cells;  // attr, val[, attr, val]
};

void append_spec_block(std::string& html, TagVocab vocab,
                       const std::vector<RowCells>& rows,
                       const std::string& title) {
    auto cell_seq = [](const RowCells& row, const std::string& open_a,
                       const std::string& close_a, const std::string& open_v,
                       const std::string& close_v) {
        std::string out;
        for (size_t i = 0; i < row.cells.size(); ++i) {
            bool attr_cell = i % 2 == 0;
            out += (attr_cell ? open_a : open_v) + escape(row.cells[i]) +
                   (attr_cell ? close_a : close_v);
        }
        return out;
    };
    switch (vocab) {
        case TagVocab::UlDiv:
            html += "<ul class=\"sm-spec specs\">\n";
            if (!title.empty())
                html += "<li class=\"hd\"><span>" + escape(title) +
                        "</span></li>\n";
            for (const auto& row : rows)
                html += "<li>" +
                        cell_seq(row, "<div class=\"k\">", "</div>",
                                 "<div class=\"v\">", "</div>") +
                        "</li>\n";
            html += "</ul>\n";
            break;
        case TagVocab::DlDtSpan:
            html += "<dl class=\"sm-spec specs\">\n";
            if (!title.empty())
                html += "<div class=\"hd\"><dt><span>" + escape(title) +
                        "</span></dt></div>\n";
            for (const auto& row : rows)
                html += "<div class=\"r\">" +
                        cell_seq(row, "<dt><span>", "</span></dt>",
                                 "<dd><span>", "</span></dd>") +
                        "</div>\n";
            html += "</dl>\n";
            break;
        case TagVocab::DivSpan:
            html += "<div class=\"sm-spec specs\">\n";
            if (!title.empty())
                html += "<div class=\"hd\"><span>" + escape(title) +
                        "</span></div>\n";
            for (const auto& row : rows)
                html += "<div class=\"row\">" +
                        cell_seq(row, "<span class=\"k\">", "</span>",
                                 "<span class=\"v\">", "</span>") +
                        "</div>\n";
            html += "</div>\n";
            break;
        case TagVocab::Table:
            html += "<table class=\"sm-spec specs\">\n";
            if (!title.empty())
                html += "<tr class=\"hd\"><th>" + escape(title) +
                        "</th></tr>\n";
            for (const auto& row : rows)
                html += "<tr>" + cell_seq(row, "<td>", "</td>", "<td>",
                                          "</td>") +
                        "</tr>\n";
            html += "</table>\n";
            break;
    }
}

void append_decoy(std::string& html, std::mt19937_64& rng, int kind,
                  const std::string& product) {
    switch (kind % 3) {
        case 0: {
            html += "<div class=\"menu\"><ul>\n";
            std::vector<std::string> items = kMenuItems;
            shuffle_vec(rng, items);
            for (size_t i = 0; i < 5; ++i)
                html += "<li><a href=\"/cat/" + std::to_string(i) + "\">" +
                        escape(items[i]) + "</a></li>\n";
            html += "</ul></div>\n";
            break;
        }
        case 1:
            html += "<div class=\"desc\">\n";
            html += "<p>The " + escape(product) +
                    " fits neatly into any home and pairs a quiet motor "
                    "with a generous capacity.</p>\n";
            html += "<p>A brand you can trust, with the weight and build "
                    "quality of far more expensive models.</p>\n";
            html += "<p>Order today and our support team will follow up "
                    "with delivery details.</p>\n";
            html += "</div>\n";
            break;
        default: {
            html += "<div class=\"reviews\">\n";
            for (int i = 0; i < 2; ++i) {
                html += "<h4>" + escape(pick(rng, kReviewHeads)) + "</h4>\n";
                html += "<p>Bought this last month and it has performed "
                        "without a hitch so far.</p>\n";
            }
            html += "</div>\n";
            break;
        }
    }
}

void append_bloat(std::string& html, const std::string& product, int nodes) {
    int sections = (nodes + 20) / 21;  // each section is about 21 nodes
    int counter = 0;
    for (int s = 0; s < sections; ++s) {
        html += "<div class=\"filler\">\n";
        for (int p = 0; p < 10; ++p)
            html += "<p>Note " + std::to_string(counter++) +
                    " about shipping, returns and support for the " +
                    escape(product) + ".</p>\n";
        html += "</div>\n";
    }
}

const dom::DomNode* find_marked_block(const dom::DomNode& node) {
    if (node.is_element()) {
        auto cls = node.attribute("class");
        if (cls && cls->find("sm-spec") != std::string_view::npos)
            return &node;
        for (const auto* child : node.children)
            if (const auto* found = find_marked_block(*child)) return found;
    }
    return nullptr;
}

}  // namespace

const std::vector<std::string>& generator_seeded_attributes() {
    return kSeededAttrs;
}

const std::vector<std::string>& generator_unseeded_attributes() {
    return kUnseededAttrs;
}

SyntheticCorpus generate_synthetic_corpus(const SyntheticConfig& cfg) {
    if (cfg.n_pages < 0) throw ValidationError("n_pages must be >= 0");
    if (cfg.rows_per_block < 1)
        throw ValidationError("rows_per_block must be >= 1");
    if (cfg.decoys < 0) throw ValidationError("decoys must be >= 0");
    size_t pairs_per_row = cfg.mode == extract::ColumnMode::FourCol ? 2 : 1;
    size_t attrs_needed = static_cast<size_t>(cfg.rows_per_block) *
                          pairs_per_row;
    if (attrs_needed > kSeededAttrs.size() + kUnseededAttrs.size())
        throw ValidationError("rows_per_block exceeds the attribute pool");

    std::mt19937_64 rng(cfg.seed);
    SyntheticCorpus corpus;
    for (int p = 0; p < cfg.n_pages; ++p) {
        char suffix[16];
        std::snprintf(suffix, sizeof suffix, "-%04d", p);
        std::string page_id = to_string(cfg.vocab) + suffix;
        const std::string& product = pick(rng, kProducts);

        auto attrs = sample_attrs(rng, attrs_needed);
        std::vector<RowCells> rows;
        GroundTruth truth{page_id, {}};
        size_t a = 0;
        for (int r = 0; r < cfg.rows_per_block; ++r) {
            RowCells row;
            for (size_t k = 0; k < pairs_per_row; ++k) {
                const std::string& attr = attrs[a++];
                const std::string& value = pick(rng, kValues);
                row.cells.push_back(attr);
                row.cells.push_back(value);
                truth.pairs.emplace_back(attr, value);
            }
            rows.push_back(std::move(row));
        }

        // Wrapper depth mirrors real product pages: the first few
        // harvestable blocks (body, site, banner) are page-scale
        // containers, which is what the skip-top heuristic drops.
        std::string html;
        html += "<html>\n<head><title>" + escape(product) +
                " | Shoporia</title></head>\n<body>\n";
        html += "<header><nav><ul><li><a href=\"/\">Home</a></li>"
                "<li><a href=\"/deals\">Deals</a></li></ul></nav></header>\n";
        html += "<div class=\"site\">\n";
        html += "<div class=\"banner\"><p>Free delivery on orders over "
                "50.</p><p>30 day returns on all appliances.</p></div>\n";
        html += "<div class=\"page\">\n";
        html += "<h1>" + escape(product) + "</h1>\n";
        int before = (cfg.decoys + 1) / 2;
        for (int d = 0; d < before; ++d) append_decoy(html, rng, d, product);
        html += "<div class=\"spec-wrap\">\n";
        append_spec_block(html, cfg.vocab, rows,
                          cfg.titles ? pick(rng, kTitles) : "");
        html += "</div>\n";
        for (int d = before; d < cfg.decoys; ++d)
            append_decoy(html, rng, d, product);
        if (cfg.bloat > 0) append_bloat(html, product, cfg.bloat);
        html += "</div>\n</div>\n";
        html += "<footer><p>All rights reserved.</p></footer>\n";
        html += "</body>\n</html>\n";

        dom::Document doc = dom::parse_html(html);
        const dom::DomNode* block = find_marked_block(doc.root());
        if (block == nullptr)
            throw ValidationError("generated page lost its spec block");

        SyntheticPage page{page_id, std::move(html), dom::node_path(*block)};
        corpus.labels.push_back({page_id, page.spec_path, BlockClass::Spec});
        corpus.truths.push_back(std::move(truth));
        corpus.pages.push_back(std::move(page));
    }
    return corpus;
}

CorpusManifest write_corpus(const SyntheticCorpus& corpus,
                            const std::string& dir) {
    fs::create_directories(fs::path(dir) / "pages");
    CorpusManifest manifest;
    for (const auto& page : corpus.pages) {
        fs::path html_path = fs::path(dir) / "pages" / (page.page_id + ".html");
        std::ofstream out(html_path);
        if (!out) throw IoError("cannot write " + html_path.string());
        out << page.html;
        manifest.entries.push_back({page.page_id, html_path.string(),
                                    Split::Train, "synthetic", "electronics"});
    }
    save_manifest(manifest, (fs::path(dir) / "manifest.jsonl").string());
    save_labels(corpus.labels, (fs::path(dir) / "labels.jsonl").string());
    save_ground_truth(corpus.truths,
                      (fs::path(dir) / "truth.jsonl").string());
    return manifest;
}

}  // namespace specmine::dataset
