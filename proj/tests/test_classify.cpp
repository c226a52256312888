#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "specmine/classify.hpp"
#include "specmine/dom.hpp"
#include "specmine/errors.hpp"

using namespace specmine;
using namespace specmine::classify;

namespace {

// Fixture used across the traversal cases:
//
//   body
//   +- div#page (3 children)
//      +- h1 "Product"
//      +- ul#menu (2 li, each with an <a>)      <- no text outside links?
//      |     li > a "Home" ; li > a "About"
//      +- div#main (2 children)
//         +- table#spec (2 tr x 2 td)
//         +- p "Lorem ipsum dolor"
//
// Eligible nodes (element, not blacklisted, text descendant, >1 element
// children): body has 1 child -> not eligible; div#page, ul#menu,
// div#main, table#spec, both tr? tr has 2 td children -> eligible too.
std::string fixture_html() {
    return "<html><body><div id=\"page\">"
           "<h1>Product</h1>"
           "<ul id=\"menu\"><li><a href=\"/h\">Home</a></li>"
           "<li><a href=\"/a\">About</a></li></ul>"
           "<div id=\"main\">"
           "<table id=\"spec\">"
           "<tr><td>Brand</td><td>Acme</td></tr>"
           "<tr><td>Color</td><td>Red</td></tr>"
           "</table>"
           "<p>Lorem ipsum dolor</p>"
           "</div></div></body></html>";
}

dom::DomNode* by_attr(dom::DomNode& n, const std::string& id) {
    if (n.is_element() && n.attribute("id") == id) return &n;
    for (auto* c : n.children)
        if (auto* hit = by_attr(*c, id)) return hit;
    return nullptr;
}

BlockScorer accept_ids(std::set<int> ids) {
    return [ids = std::move(ids)](const dom::DomNode& n) {
        bool hit = ids.count(n.node_id) > 0;
        return BlockScore{hit, hit ? 1.0 : -1.0};
    };
}

}  // namespace

TEST_CASE("accept-all stops at the topmost eligible node") {
    auto doc = dom::parse_html(fixture_html());
    // body has exactly one element child, so div#page is the first node
    // the traversal classifies, and accept-all takes it whole.
    auto* page = by_attr(doc.root(), "page");
    REQUIRE(page != nullptr);
    auto got = spec_traverse(doc, doc.body(), always_accept(),
                             always_accept());
    REQUIRE(got.blocks.size() == 1);
    CHECK(got.blocks[0].node_id == page->node_id);
    CHECK(got.blocks[0].tag == "div");
    CHECK(!doc.attached(*got.blocks[0].node));
}

TEST_CASE("reject-all visits every eligible node exactly once") {
    auto doc = dom::parse_html(fixture_html());
    std::vector<int> want;
    for (const char* id : {"page", "menu", "main", "spec"}) {
        auto* n = by_attr(doc.root(), id);
        REQUIRE(n != nullptr);
        want.push_back(n->node_id);
    }
    // Both table rows have two td children and text, so they are
    // classified as well once the table is rejected.
    auto* spec = by_attr(doc.root(), "spec");
    for (auto& c : spec->children)
        if (c->is_element()) want.push_back(c->node_id);

    TraversalLog log;
    auto got = spec_traverse(doc, doc.body(), always_reject(),
                             always_reject(), dom::TagBlacklist::standard(),
                             {}, &log);
    CHECK(got.blocks.empty());
    CHECK(log.visited == want);
    CHECK(log.classified == want.size());
    CHECK(log.filter_accepts == 0);
    // Nothing decomposed.
    CHECK(doc.attached(*spec));
}

TEST_CASE("oracle stages accept exactly the marked block") {
    auto doc = dom::parse_html(fixture_html());
    auto* spec = by_attr(doc.root(), "spec");
    auto want_path = dom::node_path(*spec);
    auto got = spec_traverse(doc, doc.body(), accept_ids({spec->node_id}),
                             accept_ids({spec->node_id}));
    REQUIRE(got.blocks.size() == 1);
    const auto& c = got.blocks[0];
    CHECK(c.node_id == spec->node_id);
    CHECK(c.tag == "table");
    CHECK(c.path == want_path);
    CHECK(c.node == spec);
    CHECK(c.filter_margin == 1.0);
    CHECK(c.coarse_score == 1.0);
}

TEST_CASE("an accepted block is decomposed and its subtree skipped") {
    auto doc = dom::parse_html(fixture_html());
    auto* menu = by_attr(doc.root(), "menu");
    auto* spec = by_attr(doc.root(), "spec");
    TraversalLog log;
    auto got = spec_traverse(doc, doc.body(),
                             accept_ids({menu->node_id, spec->node_id}),
                             always_accept(), dom::TagBlacklist::standard(),
                             {}, &log);
    REQUIRE(got.blocks.size() == 2);
    CHECK(got.blocks[0].node_id == menu->node_id);
    CHECK(got.blocks[1].node_id == spec->node_id);
    CHECK(!doc.attached(*menu));
    CHECK(!doc.attached(*spec));
    // The li/tr nodes under accepted blocks were never classified.
    for (int id : log.visited) {
        CHECK(doc.node_by_id(id) != nullptr);
    }
    // Decomposed blocks remain readable through the candidate pointer.
    CHECK(got.blocks[1].node->children.size() == 2);
}

TEST_CASE("filter rejection blocks the coarse stage in the cascade") {
    auto doc = dom::parse_html(fixture_html());
    TraversalLog log;
    auto got = spec_traverse(doc, doc.body(), always_reject(),
                             always_accept(), dom::TagBlacklist::standard(),
                             {}, &log);
    CHECK(got.blocks.empty());
    CHECK(log.coarse_accepts == 0);
    CHECK(log.classified > 0);
}

TEST_CASE("blacklisted and textless subtrees are skipped entirely") {
    auto doc = dom::parse_html(
        "<html><body><div id=\"page\">"
        "<form id=\"f\"><input><input><label>Go</label></form>"
        "<div id=\"bare\"><span></span><span></span></div>"
        "<div id=\"real\"><span>Brand</span><span>Acme</span></div>"
        "<p>pad</p>"
        "</div></body></html>");
    auto* real = by_attr(doc.root(), "real");
    TraversalLog log;
    auto got = spec_traverse(doc, doc.body(), always_accept(),
                             accept_ids({real->node_id}),
                             dom::TagBlacklist::standard(), {}, &log);
    REQUIRE(got.blocks.size() == 1);
    CHECK(got.blocks[0].node_id == real->node_id);
    auto* form = by_attr(doc.root(), "f");
    auto* bare = by_attr(doc.root(), "bare");
    for (int id : log.visited) {
        CHECK(id != form->node_id);
        CHECK(id != bare->node_id);
    }
}

TEST_CASE("is_candidate_block applies all four gates") {
    auto doc = dom::parse_html(
        "<html><body>"
        "<div id=\"two\"><span>a</span><span>b</span></div>"
        "<div id=\"one\"><span>a</span></div>"
        "<div id=\"empty\"><span></span><b></b></div>"
        "<form id=\"f\"><span>a</span><span>b</span></form>"
        "text node"
        "</body></html>");
    auto bl = dom::TagBlacklist::standard();
    CHECK(is_candidate_block(*by_attr(doc.root(), "two"), bl));
    CHECK(!is_candidate_block(*by_attr(doc.root(), "one"), bl));
    CHECK(!is_candidate_block(*by_attr(doc.root(), "empty"), bl));
    CHECK(!is_candidate_block(*by_attr(doc.root(), "f"), bl));

    // Mixed text/element children: with element_children_only a lone
    // element child among text nodes does not pass the ">1" gate.
    auto doc2 = dom::parse_html(
        "<html><body><div id=\"mixed\">before<span>x</span>after</div>"
        "</body></html>");
    auto* mixed = by_attr(doc2.root(), "mixed");
    CHECK(!is_candidate_block(*mixed, bl));
    TraversalOptions raw;
    raw.element_children_only = false;
    CHECK(is_candidate_block(*mixed, bl, raw));
}

TEST_CASE("filter-only candidates contain the cascade's") {
    auto doc1 = dom::parse_html(fixture_html());
    auto doc2 = dom::parse_html(fixture_html());
    auto* spec1 = by_attr(doc1.root(), "spec");
    // Filter accepts two blocks; coarse accepts only the table. The
    // cascade output must be a subset of filter-only output (same pages,
    // same filter), here checked via paths.
    auto* menu1 = by_attr(doc1.root(), "menu");
    auto filter_ids = accept_ids({menu1->node_id, spec1->node_id});
    auto fo = spec_traverse(doc1, doc1.body(), filter_ids, always_accept());

    auto* spec2 = by_attr(doc2.root(), "spec");
    auto* menu2 = by_attr(doc2.root(), "menu");
    auto cas = spec_traverse(doc2, doc2.body(),
                             accept_ids({menu2->node_id, spec2->node_id}),
                             accept_ids({spec2->node_id}));
    std::set<std::vector<int>> fo_paths;
    for (const auto& c : fo.blocks) fo_paths.insert(c.path);
    for (const auto& c : cas.blocks) CHECK(fo_paths.count(c.path) == 1);
    CHECK(cas.blocks.size() < fo.blocks.size());
}

TEST_CASE("candidate paths resolve on a fresh parse") {
    auto doc = dom::parse_html(fixture_html());
    auto* spec = by_attr(doc.root(), "spec");
    auto got = spec_traverse(doc, doc.body(), accept_ids({spec->node_id}),
                             always_accept());
    REQUIRE(got.blocks.size() == 1);
    auto fresh = dom::parse_html(fixture_html());
    auto* resolved = dom::resolve_path(fresh.root(), got.blocks[0].path);
    REQUIRE(resolved != nullptr);
    CHECK(resolved->attribute("id") == "spec");
}

TEST_CASE("traversal is deterministic") {
    for (int round = 0; round < 3; ++round) {
        auto doc = dom::parse_html(fixture_html());
        auto* spec = by_attr(doc.root(), "spec");
        auto got = spec_traverse(doc, doc.body(),
                                 accept_ids({spec->node_id}),
                                 accept_ids({spec->node_id}));
        REQUIRE(got.blocks.size() == 1);
        CHECK(got.blocks[0].tag == "table");
    }
}

TEST_CASE("arrangement strings round-trip") {
    for (auto a : {Arrangement::FilterOnly, Arrangement::CoarseOnly,
                   Arrangement::Cascade}) {
        CHECK(arrangement_from_string(to_string(a)) == a);
    }
    CHECK_THROWS_AS(arrangement_from_string("bogus"), ValidationError);
}

TEST_CASE("run_arrangement rejects missing models") {
    auto doc = dom::parse_html(fixture_html());
    CHECK_THROWS_AS(run_arrangement(doc, Arrangement::FilterOnly, nullptr,
                                    nullptr, nullptr),
                    ValidationError);
    CHECK_THROWS_AS(run_arrangement(doc, Arrangement::CoarseOnly, nullptr,
                                    nullptr, nullptr),
                    ValidationError);
    svm::SvmModel dummy;  // present filter, missing coarse pair
    CHECK_THROWS_AS(run_arrangement(doc, Arrangement::Cascade, &dummy,
                                    nullptr, nullptr),
                    ValidationError);
}
