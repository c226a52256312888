#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <vector>

#include "doctest.h"
#include "specmine/dom.hpp"

using namespace specmine;
using namespace specmine::dom;

namespace {

const DomNode* only_element_child(const DomNode& n, size_t i) {
    size_t seen = 0;
    for (const auto* c : n.children)
        if (c->is_element() && seen++ == i) return c;
    return nullptr;
}

std::vector<std::string> texts_of(const DomNode& n) {
    std::vector<std::string> out;
    for (const auto* t : text_descendants(n, TagBlacklist::standard()))
        out.push_back(t->normalized_text());
    return out;
}

// Independent DFS oracle for text_descendants, sharing no code with it.
void dfs_texts(const DomNode& n, const TagBlacklist& bl,
               std::vector<std::string>& out) {
    if (n.is_text()) {
        auto norm = n.normalized_text();
        if (!norm.empty()) out.push_back(norm);
        return;
    }
    if (bl.contains(n.tag)) return;
    for (const auto* c : n.children) dfs_texts(*c, bl, out);
}

}  // namespace

TEST_CASE("parse builds the documented two-span tree") {
    Document doc = parse_html("<div><span>RAM</span><span>8 GB</span></div>");
    const DomNode* div = only_element_child(doc.body(), 0);
    REQUIRE(div != nullptr);
    CHECK(div->tag == "div");
    REQUIRE(div->element_child_count() == 2);
    const DomNode* s0 = only_element_child(*div, 0);
    const DomNode* s1 = only_element_child(*div, 1);
    CHECK(s0->tag == "span");
    CHECK(s1->tag == "span");
    REQUIRE(s0->children.size() == 1);
    CHECK(s0->children[0]->is_text());
    CHECK(s0->children[0]->text == "RAM");
    CHECK(s1->children[0]->text == "8 GB");
}

TEST_CASE("empty or whitespace input raises EmptyInputError") {
    CHECK_THROWS_AS(parse_html(""), EmptyInputError);
    CHECK_THROWS_AS(parse_html("   \n\t "), EmptyInputError);
}

TEST_CASE("unclosed li recovers to two siblings") {
    // Reference HTML5 parsers read this as two sibling <li> under <ul>.
    Document doc = parse_html("<ul><li>Brand<li>LG</ul>");
    const DomNode* ul = only_element_child(doc.body(), 0);
    REQUIRE(ul != nullptr);
    CHECK(ul->tag == "ul");
    REQUIRE(ul->element_child_count() == 2);
    CHECK(only_element_child(*ul, 0)->tag == "li");
    CHECK(only_element_child(*ul, 1)->tag == "li");
    CHECK(texts_of(*ul) == std::vector<std::string>{"Brand", "LG"});
}

TEST_CASE("table recovery keeps rows as siblings") {
    Document doc =
        parse_html("<table><tr><td>Brand<td>LG<tr><td>Color<td>Red</table>");
    const DomNode* table = only_element_child(doc.body(), 0);
    REQUIRE(table != nullptr);
    REQUIRE(table->element_child_count() == 2);
    const DomNode* tr0 = only_element_child(*table, 0);
    CHECK(tr0->tag == "tr");
    CHECK(tr0->element_child_count() == 2);
    CHECK(texts_of(*table) ==
          std::vector<std::string>{"Brand", "LG", "Color", "Red"});
}

TEST_CASE("nested lists are not flattened by implicit closes") {
    Document doc = parse_html(
        "<ul><li>a<ul><li>a1<li>a2</ul></li><li>b</li></ul>");
    const DomNode* outer = only_element_child(doc.body(), 0);
    REQUIRE(outer->element_child_count() == 2);
    const DomNode* first = only_element_child(*outer, 0);
    // The nested <ul> stays inside the first <li>.
    CHECK(first->element_child_count() == 1);
    CHECK(only_element_child(*first, 0)->tag == "ul");
}

TEST_CASE("attributes parse lowercased with first occurrence winning") {
    Document doc = parse_html(
        "<div CLASS=\"a b\" class=zzz data-x='q&amp;r'>t</div>");
    const DomNode* div = only_element_child(doc.body(), 0);
    CHECK(div->attribute("class") == "a b");
    CHECK(div->attribute("data-x") == "q&r");
    CHECK(!div->attribute("missing").has_value());
}

TEST_CASE("entities decode in text") {
    Document doc = parse_html("<p>a &amp; b &lt;c&gt; &#65;&#x42; &nbsp;</p>");
    auto texts = texts_of(doc.body());
    REQUIRE(texts.size() == 1);
    CHECK(texts[0] == "a & b <c> AB");
}

TEST_CASE("comments and doctype are dropped") {
    Document doc = parse_html(
        "<!doctype html><div><!-- hidden -->shown</div>");
    CHECK(texts_of(doc.body()) == std::vector<std::string>{"shown"});
}

TEST_CASE("script content is raw text and excluded by blacklist") {
    Document doc = parse_html(
        "<div><script>if (a < b) { x(); }</script><span>v</span></div>");
    CHECK(texts_of(doc.body()) == std::vector<std::string>{"v"});
    const DomNode* div = only_element_child(doc.body(), 0);
    const DomNode* script = only_element_child(*div, 0);
    REQUIRE(script->tag == "script");
    REQUIRE(script->children.size() == 1);
    CHECK(script->children[0]->text == "if (a < b) { x(); }");
}

TEST_CASE("void elements take no children") {
    Document doc = parse_html("<div><img src=x><br>text</div>");
    const DomNode* div = only_element_child(doc.body(), 0);
    const DomNode* img = only_element_child(*div, 0);
    CHECK(img->tag == "img");
    CHECK(img->children.empty());
    CHECK(texts_of(*div) == std::vector<std::string>{"text"});
}

TEST_CASE("text_descendants matches the documented examples") {
    Document doc = parse_html("<div><span>RAM</span><span>8 GB</span></div>");
    CHECK(texts_of(doc.body()) == std::vector<std::string>{"RAM", "8 GB"});

    Document doc2 = parse_html("<div><script>var x=1</script></div>");
    CHECK(texts_of(doc2.body()).empty());
}

TEST_CASE("six-row block yields 12 text nodes in row-major order") {
    std::string html = "<ul>";
    const char* rows[6][2] = {{"Installation Type", "Fully Automatic"},
                              {"Brand", "LG"},
                              {"Capacity", "6.2 kg"},
                              {"Color", "Silver"},
                              {"Function", "Top Load"},
                              {"Warranty", "2 Years"}};
    for (const auto& r : rows)
        html += std::string("<li><div>") + r[0] + "</div><div>" + r[1] +
                "</div></li>";
    html += "</ul>";
    Document doc = parse_html(html);
    auto got = texts_of(doc.body());
    std::vector<std::string> oracle;
    dfs_texts(doc.body(), TagBlacklist::standard(), oracle);
    REQUIRE(got.size() == 12);
    CHECK(got == oracle);
    CHECK(got[0] == "Installation Type");
    CHECK(got[1] == "Fully Automatic");
    CHECK(got[10] == "Warranty");
    CHECK(got[11] == "2 Years");
}

TEST_CASE("text_descendants composes over children") {
    Document doc = parse_html(
        "<div><p>a</p><section><span>b</span><span>c</span></section>"
        "<p>d</p></div>");
    auto whole = texts_of(doc.body());
    std::vector<std::string> stitched;
    for (const auto* child : doc.body().children) {
        if (!child->is_element()) continue;
        for (const auto& t : texts_of(*child)) stitched.push_back(t);
    }
    CHECK(whole == stitched);
}

TEST_CASE("has_text_descendant respects the blacklist") {
    Document doc = parse_html("<div><style>.a{}</style></div>");
    const DomNode* div = only_element_child(doc.body(), 0);
    CHECK(!has_text_descendant(*div, TagBlacklist::standard()));
    Document doc2 = parse_html("<div><p> </p><p>x</p></div>");
    CHECK(has_text_descendant(*only_element_child(doc2.body(), 0),
                              TagBlacklist::standard()));
}

TEST_CASE("decompose removes the middle child and keeps order") {
    Document doc = parse_html("<div><p>a</p><p>b</p><p>c</p></div>");
    DomNode* div = doc.body().children.empty()
                       ? nullptr
                       : const_cast<DomNode*>(only_element_child(doc.body(), 0));
    REQUIRE(div != nullptr);
    DomNode* middle = const_cast<DomNode*>(only_element_child(*div, 1));
    int gone_id = middle->node_id;
    doc.decompose(*middle);
    CHECK(texts_of(*div) == std::vector<std::string>{"a", "c"});
    CHECK(!doc.attached(*middle));
    // The detached subtree stays readable.
    CHECK(middle->children.size() == 1);
    for (const auto* t : text_descendants(doc.body(), TagBlacklist::standard()))
        CHECK(t->parent->node_id != gone_id);
}

TEST_CASE("decompose of the root is refused") {
    Document doc = parse_html("<div>x</div>");
    CHECK_THROWS_AS(doc.decompose(doc.root()), RootDecomposeError);
}

TEST_CASE("wrapper_of walks parent chain up to the stop node") {
    Document doc = parse_html(
        "<ul><li><span class=\"k\">RAM</span></li></ul>");
    const DomNode* ul = only_element_child(doc.body(), 0);
    const DomNode* li = only_element_child(*ul, 0);
    const DomNode* span = only_element_child(*li, 0);
    const DomNode* text = span->children[0];
    REQUIRE(text->is_text());

    Wrapper w = wrapper_of(*text, ul);
    CHECK(w.signature == std::vector<std::string>{"span", "li"});

    Wrapper unbounded = wrapper_of(*text, nullptr);
    REQUIRE(unbounded.signature.size() >= 3);
    CHECK(unbounded.signature[0] == "span");
    CHECK(unbounded.signature[1] == "li");
    CHECK(unbounded.signature[2] == "ul");
}

TEST_CASE("identically rendered cells share a signature") {
    Document doc = parse_html(
        "<ul><li><span>Brand</span></li><li><span>Color</span></li></ul>");
    const DomNode* ul = only_element_child(doc.body(), 0);
    auto cells = text_descendants(*ul, TagBlacklist::standard());
    REQUIRE(cells.size() == 2);
    CHECK(wrapper_of(*cells[0], ul) == wrapper_of(*cells[1], ul));
}

TEST_CASE("dt/span cell signature carries dt and dl") {
    Document doc = parse_html(
        "<dl><div><dt><span>Attr</span></dt><dd><span>Val</span></dd></div>"
        "</dl>");
    auto cells = text_descendants(doc.body(), TagBlacklist::standard());
    REQUIRE(cells.size() == 2);
    Wrapper w = wrapper_of(*cells[0], nullptr);
    REQUIRE(w.signature.size() >= 4);
    CHECK(w.signature[0] == "span");
    CHECK(w.signature[1] == "dt");
    CHECK(w.signature[3] == "dl");
}

TEST_CASE("parse, serialize, parse is a fixed point") {
    const char* pages[] = {
        "<div><span>RAM</span><span>8 GB</span></div>",
        "<ul><li>Brand<li>LG</ul>",
        "<table><tr><td>a<td>b<tr><td>c<td>d</table>",
        "<div a=1><img src=x><p>t &amp; u</p><script>a<b</script></div>",
    };
    for (const char* page : pages) {
        Document d1 = parse_html(page);
        std::string s1 = serialize(d1.root());
        Document d2 = parse_html(s1);
        std::string s2 = serialize(d2.root());
        CHECK(s1 == s2);
    }
}

TEST_CASE("node paths resolve and survive sibling decomposition") {
    Document doc = parse_html(
        "<div><p>a</p><section><span>b</span></section><p>c</p></div>");
    DomNode* div = const_cast<DomNode*>(only_element_child(doc.body(), 0));
    const DomNode* section = only_element_child(*div, 1);
    const DomNode* span = only_element_child(*section, 0);
    auto path = node_path(*span);
    CHECK(resolve_path(doc.root(), path) == span);

    DomNode* first = const_cast<DomNode*>(only_element_child(*div, 0));
    auto first_path = node_path(*first);
    doc.decompose(*first);
    // Paths are parse-time element indices; removing a sibling does not
    // renumber the survivors.
    CHECK(resolve_path(doc.root(), path) == span);
    CHECK(resolve_path(doc.root(), first_path) == nullptr);
}

TEST_CASE("node ids are unique") {
    Document doc = parse_html(
        "<div><p>a</p><p>b</p><ul><li>c</li><li>d</li></ul></div>");
    std::set<int> ids;
    std::vector<const DomNode*> stack{&doc.root()};
    size_t n = 0;
    while (!stack.empty()) {
        const DomNode* cur = stack.back();
        stack.pop_back();
        ++n;
        CHECK(ids.insert(cur->node_id).second);
        for (const auto* c : cur->children) {
            CHECK(c->parent == cur);
            stack.push_back(c);
        }
    }
    CHECK(n == doc.node_count());
}

TEST_CASE("invalid utf8 replaced by default, rejected when strict") {
    Document doc = parse_html("<p>a\xffz</p>");
    auto texts = texts_of(doc.body());
    REQUIRE(texts.size() == 1);
    CHECK(texts[0].find("\xef\xbf\xbd") != std::string::npos);

    ParseOptions strict;
    strict.lossy_utf8 = false;
    CHECK_THROWS_AS(parse_html("<p>a\xffz</p>", strict), EncodingError);
}

TEST_CASE("standard blacklist holds the documented tags") {
    const auto& bl = TagBlacklist::standard();
    for (const char* t :
         {"script", "style", "noscript", "head", "meta", "link", "iframe",
          "svg", "nav", "footer", "header", "form", "button", "input",
          "select", "option"})
        CHECK(bl.contains(t));
    CHECK(!bl.contains("div"));
    CHECK(!bl.contains("table"));
}
