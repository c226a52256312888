#include "specmine/dom.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "specmine/text.hpp"

namespace specmine::dom {

namespace {

const std::unordered_set<std::string>& void_elements() {
    static const std::unordered_set<std::string> s = {
        "area", "base", "br", "col",   "embed",  "hr",    "img",
        "input", "link", "meta", "param", "source", "track", "wbr"};
    return s;
}

// Content is consumed as raw character data until the matching close tag.
bool is_raw_text_element(const std::string& tag) {
    return tag == "script" || tag == "style";
}

// RCDATA: raw until close tag, but entities decode.
bool is_rcdata_element(const std::string& tag) {
    return tag == "title" || tag == "textarea";
}

bool is_head_only_element(const std::string& tag) {
    return tag == "title" || tag == "meta" || tag == "link" ||
           tag == "base" || tag == "style";
}

// Start tags that implicitly close an open <p>.
bool closes_p(const std::string& tag) {
    static const std::unordered_set<std::string> s = {
        "address", "article", "aside",  "blockquote", "center",  "details",
        "dialog",  "dir",     "div",    "dl",         "dd",      "dt",
        "fieldset", "figcaption", "figure", "footer", "form",    "h1",
        "h2",      "h3",      "h4",     "h5",         "h6",      "header",
        "hgroup",  "hr",      "li",     "main",       "menu",    "nav",
        "ol",      "p",       "pre",    "section",    "summary", "table",
        "ul"};
    return s.count(tag) > 0;
}

const std::unordered_map<std::string, std::string>& entity_map() {
    static const std::unordered_map<std::string, std::string> m = {
        {"amp", "&"},        {"lt", "<"},         {"gt", ">"},
        {"quot", "\""},      {"apos", "'"},       {"nbsp", "\xC2\xA0"},
        {"copy", "\xC2\xA9"}, {"reg", "\xC2\xAE"}, {"trade", "\xE2\x84\xA2"},
        {"deg", "\xC2\xB0"}, {"times", "\xC3\x97"}, {"divide", "\xC3\xB7"},
        {"mdash", "\xE2\x80\x94"}, {"ndash", "\xE2\x80\x93"},
        {"hellip", "\xE2\x80\xA6"}, {"lsquo", "\xE2\x80\x98"},
        {"rsquo", "\xE2\x80\x99"}, {"ldquo", "\xE2\x80\x9C"},
        {"rdquo", "\xE2\x80\x9D"}, {"bull", "\xE2\x80\xA2"},
        {"middot", "\xC2\xB7"}, {"laquo", "\xC2\xAB"}, {"raquo", "\xC2\xBB"},
        {"frac12", "\xC2\xBD"}, {"frac14", "\xC2\xBC"},
        {"frac34", "\xC2\xBE"}, {"plusmn", "\xC2\xB1"},
        {"sup2", "\xC2\xB2"}, {"sup3", "\xC2\xB3"}, {"micro", "\xC2\xB5"},
        {"eacute", "\xC3\xA9"}, {"egrave", "\xC3\xA8"},
        {"agrave", "\xC3\xA0"}, {"ccedil", "\xC3\xA7"},
        {"auml", "\xC3\xA4"}, {"ouml", "\xC3\xB6"}, {"uuml", "\xC3\xBC"},
        {"szlig", "\xC3\x9F"}, {"ntilde", "\xC3\xB1"}};
    return m;
}

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out += s[i++];
            continue;
        }
        size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out += '&';
            ++i;
            continue;
        }
        std::string_view name = s.substr(i + 1, semi - i - 1);
        if (!name.empty() && name[0] == '#') {
            char32_t cp = 0;
            bool ok = name.size() > 1;
            if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
                for (size_t k = 2; k < name.size() && ok; ++k) {
                    char c = static_cast<char>(std::tolower(name[k]));
                    if (c >= '0' && c <= '9') cp = cp * 16 + (c - '0');
                    else if (c >= 'a' && c <= 'f') cp = cp * 16 + (c - 'a' + 10);
                    else ok = false;
                }
                ok = ok && name.size() > 2;
            } else {
                for (size_t k = 1; k < name.size() && ok; ++k) {
                    if (name[k] >= '0' && name[k] <= '9') cp = cp * 10 + (name[k] - '0');
                    else ok = false;
                }
            }
            if (ok && cp > 0 && cp <= 0x10FFFF) {
                out += text::encode_utf8(cp);
                i = semi + 1;
                continue;
            }
            out += '&';
            ++i;
            continue;
        }
        auto it = entity_map().find(std::string(name));
        if (it != entity_map().end()) {
            out += it->second;
            i = semi + 1;
        } else {
            out += '&';
            ++i;
        }
    }
    return out;
}

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

std::string escape_attr(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '"') out += "&quot;";
        else if (c == '<') out += "&lt;";
        else out += c;
    }
    return out;
}

bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

}  // namespace

// ---------------------------------------------------------------------------
// DomNode
// ---------------------------------------------------------------------------

std::optional<std::string_view> DomNode::attribute(std::string_view name) const {
    for (const auto& [k, v] : attributes) {
        if (k == name) return std::string_view(v);
    }
    return std::nullopt;
}

std::string DomNode::normalized_text() const {
    return text::normalize_ws(text);
}

size_t DomNode::element_child_count() const {
    size_t n = 0;
    for (const DomNode* c : children) {
        if (c->is_element()) ++n;
    }
    return n;
}

// ---------------------------------------------------------------------------
// TagBlacklist
// ---------------------------------------------------------------------------

TagBlacklist::TagBlacklist(std::initializer_list<std::string> tags) {
    for (const auto& t : tags) tags_.insert(text::to_lower_ascii(t));
}

TagBlacklist::TagBlacklist(const std::vector<std::string>& tags) {
    for (const auto& t : tags) tags_.insert(text::to_lower_ascii(t));
}

bool TagBlacklist::contains(std::string_view tag) const {
    return tags_.count(std::string(tag)) > 0;
}

std::vector<std::string> TagBlacklist::sorted_tags() const {
    std::vector<std::string> out(tags_.begin(), tags_.end());
    std::sort(out.begin(), out.end());
    return out;
}

const TagBlacklist& TagBlacklist::standard() {
    static const TagBlacklist bl{
        "script", "style", "noscript", "head",   "meta",   "link",
        "iframe", "svg",   "nav",      "footer", "header", "form",
        "button", "input", "select",   "option"};
    return bl;
}

// ---------------------------------------------------------------------------
// Document
// ---------------------------------------------------------------------------

DomNode* Document::make_node(NodeKind kind) {
    auto node = std::make_unique<DomNode>();
    node->kind = kind;
    node->node_id = static_cast<int>(arena_.size());
    arena_.push_back(std::move(node));
    return arena_.back().get();
}

DomNode* Document::node_by_id(int id) {
    if (id < 0 || static_cast<size_t>(id) >= arena_.size()) return nullptr;
    return arena_[static_cast<size_t>(id)].get();
}

const DomNode* Document::node_by_id(int id) const {
    if (id < 0 || static_cast<size_t>(id) >= arena_.size()) return nullptr;
    return arena_[static_cast<size_t>(id)].get();
}

void Document::decompose(DomNode& node) {
    if (node.parent == nullptr) {
        throw RootDecomposeError("cannot decompose the document root");
    }
    auto& siblings = node.parent->children;
    siblings.erase(std::remove(siblings.begin(), siblings.end(), &node),
                   siblings.end());
    node.parent = nullptr;
}

bool Document::attached(const DomNode& node) const {
    const DomNode* cur = &node;
    while (cur->parent != nullptr) cur = cur->parent;
    return cur == root_;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class TreeBuilder {
public:
    explicit TreeBuilder(Document& doc) : doc_(doc) {
        html_ = doc_.make_node(NodeKind::Element);
        html_->tag = "html";
        doc_.set_root(html_);
        stack_.push_back(html_);
    }

    void start_tag(std::string tag,
                   std::vector<std::pair<std::string, std::string>> attrs,
                   bool self_closing) {
        if (tag == "html") {
            merge_attrs(html_, attrs);
            return;
        }
        if (tag == "head") {
            if (head_ == nullptr && body_ == nullptr) {
                head_ = append_element("head", std::move(attrs), html_);
                stack_.push_back(head_);
            }
            return;
        }
        if (tag == "body") {
            if (body_ == nullptr) {
                close_head();
                body_ = append_element("body", std::move(attrs), html_);
                stack_.push_back(body_);
            } else {
                merge_attrs(body_, attrs);
            }
            return;
        }
        if (body_ == nullptr && head_ == nullptr &&
            is_head_only_element(tag)) {
            head_ = append_element("head", {}, html_);
            stack_.push_back(head_);
        }
        if (!in_head() && body_ == nullptr) {
            ensure_body();
        }
        if (in_head() && !is_head_only_element(tag) && tag != "script" &&
            tag != "noscript") {
            close_head();
            ensure_body();
        }

        apply_implicit_closes(tag);

        DomNode* el = append_element(tag, std::move(attrs), stack_.back());
        bool is_void = void_elements().count(tag) > 0;
        if (!is_void && !self_closing) {
            stack_.push_back(el);
        }
    }

    void end_tag(const std::string& tag) {
        if (tag == "html" || tag == "body") return;  // kept open for recovery
        if (tag == "head") {
            close_head();
            return;
        }
        if (tag == "br") return;
        for (size_t i = stack_.size(); i-- > 1;) {
            if (stack_[i] == body_) break;  // never pop body via end tags
            if (stack_[i]->tag == tag) {
                stack_.resize(i);
                return;
            }
        }
        // Unmatched end tag: ignored.
    }

    void add_text(std::string decoded) {
        if (decoded.empty()) return;
        if (stack_.back() == html_ || (in_head() && head_ != nullptr &&
                                       stack_.back() == head_)) {
            // Top-level text: whitespace is dropped, content opens <body>.
            if (text::normalize_ws(decoded).empty()) return;
            if (in_head()) close_head();
            ensure_body();
        }
        DomNode* t = doc_.make_node(NodeKind::Text);
        t->text = std::move(decoded);
        t->parent = stack_.back();
        stack_.back()->children.push_back(t);
    }

    void pop_raw_element() {
        if (stack_.size() > 1) stack_.pop_back();
    }

    void finish() {
        if (body_ == nullptr) ensure_body();
        doc_.set_body(body_);
        stack_.clear();
    }

private:
    bool in_head() const { return head_ != nullptr && !head_closed_; }

    void close_head() {
        if (head_ != nullptr && !head_closed_) {
            while (stack_.size() > 1 && stack_.back() != head_) {
                stack_.pop_back();
            }
            if (stack_.back() == head_) stack_.pop_back();
            head_closed_ = true;
        }
    }

    void ensure_body() {
        if (body_ == nullptr) {
            close_head();
            body_ = append_element("body", {}, html_);
            stack_.push_back(body_);
        }
    }

    DomNode* append_element(
        std::string tag,
        std::vector<std::pair<std::string, std::string>> attrs,
        DomNode* parent) {
        DomNode* el = doc_.make_node(NodeKind::Element);
        el->tag = std::move(tag);
        el->attributes = std::move(attrs);
        el->parent = parent;
        el->element_index = static_cast<int>(parent->element_child_count());
        parent->children.push_back(el);
        return el;
    }

    static void merge_attrs(
        DomNode* el,
        const std::vector<std::pair<std::string, std::string>>& attrs) {
        for (const auto& [k, v] : attrs) {
            if (!el->attribute(k)) el->attributes.emplace_back(k, v);
        }
    }

    // Pops elements that the incoming start tag implicitly closes,
    // scanning the stack top-down and stopping at scope boundaries.
    void apply_implicit_closes(const std::string& tag) {
        struct Rule {
            std::unordered_set<std::string> closes;
            std::unordered_set<std::string> boundary;
        };
        static const std::unordered_map<std::string, Rule> rules = {
            {"li", {{"li"}, {"ul", "ol", "table", "body"}}},
            {"dt", {{"dt", "dd"}, {"dl", "body"}}},
            {"dd", {{"dt", "dd"}, {"dl", "body"}}},
            {"tr", {{"tr", "td", "th"}, {"table", "thead", "tbody", "tfoot", "body"}}},
            {"td", {{"td", "th"}, {"tr", "table", "body"}}},
            {"th", {{"td", "th"}, {"tr", "table", "body"}}},
            {"thead", {{"tr", "td", "th", "thead", "tbody", "tfoot"}, {"table", "body"}}},
            {"tbody", {{"tr", "td", "th", "thead", "tbody", "tfoot"}, {"table", "body"}}},
            {"tfoot", {{"tr", "td", "th", "thead", "tbody", "tfoot"}, {"table", "body"}}},
            {"option", {{"option"}, {"select", "datalist", "body"}}},
            {"optgroup", {{"option", "optgroup"}, {"select", "body"}}},
        };

        auto it = rules.find(tag);
        if (it != rules.end()) {
            const Rule& r = it->second;
            size_t lowest = stack_.size();
            for (size_t i = stack_.size(); i-- > 1;) {
                if (stack_[i] == body_) break;
                if (r.boundary.count(stack_[i]->tag) > 0) break;
                if (r.closes.count(stack_[i]->tag) > 0) lowest = i;
            }
            if (lowest < stack_.size()) stack_.resize(lowest);
        }
        if (closes_p(tag)) {
            for (size_t i = stack_.size(); i-- > 1;) {
                if (stack_[i] == body_) break;
                if (stack_[i]->tag == "p") {
                    stack_.resize(i);
                    break;
                }
            }
        }
    }

    Document& doc_;
    std::vector<DomNode*> stack_;
    DomNode* html_ = nullptr;
    DomNode* head_ = nullptr;
    DomNode* body_ = nullptr;
    bool head_closed_ = false;
};

struct Tokenizer {
    std::string_view input;
    size_t pos = 0;
    TreeBuilder& builder;

    void run() {
        std::string text_buf;
        while (pos < input.size()) {
            char c = input[pos];
            if (c != '<') {
                text_buf += c;
                ++pos;
                continue;
            }
            // '<' : decide whether this is markup.
            if (pos + 1 >= input.size()) {
                text_buf += '<';
                ++pos;
                continue;
            }
            char next = input[pos + 1];
            if (next == '!' ) {
                flush_text(text_buf);
                consume_declaration();
            } else if (next == '?') {
                flush_text(text_buf);
                pos = skip_past('>');
            } else if (next == '/') {
                if (pos + 2 < input.size() && is_ascii_alpha(input[pos + 2])) {
                    flush_text(text_buf);
                    consume_end_tag();
                } else {
                    pos = skip_past('>');
                }
            } else if (is_ascii_alpha(next)) {
                flush_text(text_buf);
                consume_start_tag();
            } else {
                text_buf += '<';
                ++pos;
            }
        }
        flush_text(text_buf);
    }

private:
    void flush_text(std::string& buf) {
        if (!buf.empty()) {
            builder.add_text(decode_entities(buf));
            buf.clear();
        }
    }

    size_t skip_past(char target) {
        size_t p = input.find(target, pos);
        return p == std::string_view::npos ? input.size() : p + 1;
    }

    void consume_declaration() {
        if (input.compare(pos, 4, "<!--") == 0) {
            size_t end = input.find("-->", pos + 4);
            pos = end == std::string_view::npos ? input.size() : end + 3;
        } else if (input.compare(pos, 9, "<![CDATA[") == 0) {
            size_t end = input.find("]]>", pos + 9);
            pos = end == std::string_view::npos ? input.size() : end + 3;
        } else {
            pos = skip_past('>');  // doctype and friends
        }
    }

    void consume_end_tag() {
        pos += 2;  // "</"
        std::string tag = read_tag_name();
        pos = skip_past('>');
        builder.end_tag(tag);
    }

    void consume_start_tag() {
        ++pos;  // '<'
        std::string tag = read_tag_name();
        std::vector<std::pair<std::string, std::string>> attrs;
        bool self_closing = false;
        read_attributes(attrs, self_closing);
        builder.start_tag(tag, std::move(attrs), self_closing);
        if (!self_closing &&
            (is_raw_text_element(tag) || is_rcdata_element(tag))) {
            consume_raw_content(tag, is_rcdata_element(tag));
        }
    }

    std::string read_tag_name() {
        std::string name;
        while (pos < input.size()) {
            char c = input[pos];
            if (c == '>' || c == '/' || std::isspace(static_cast<unsigned char>(c))) {
                break;
            }
            name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            ++pos;
        }
        return name;
    }

    void read_attributes(std::vector<std::pair<std::string, std::string>>& attrs,
                         bool& self_closing) {
        while (pos < input.size()) {
            while (pos < input.size() &&
                   std::isspace(static_cast<unsigned char>(input[pos]))) {
                ++pos;
            }
            if (pos >= input.size()) return;
            if (input[pos] == '>') {
                ++pos;
                return;
            }
            if (input[pos] == '/') {
                ++pos;
                if (pos < input.size() && input[pos] == '>') {
                    ++pos;
                    self_closing = true;
                    return;
                }
                continue;
            }
            std::string name;
            while (pos < input.size()) {
                char c = input[pos];
                if (c == '=' || c == '>' || c == '/' ||
                    std::isspace(static_cast<unsigned char>(c))) {
                    break;
                }
                name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                ++pos;
            }
            std::string value;
            while (pos < input.size() &&
                   std::isspace(static_cast<unsigned char>(input[pos]))) {
                ++pos;
            }
            if (pos < input.size() && input[pos] == '=') {
                ++pos;
                while (pos < input.size() &&
                       std::isspace(static_cast<unsigned char>(input[pos]))) {
                    ++pos;
                }
                if (pos < input.size() &&
                    (input[pos] == '"' || input[pos] == '\'')) {
                    char quote = input[pos++];
                    size_t end = input.find(quote, pos);
                    if (end == std::string_view::npos) end = input.size();
                    value = decode_entities(input.substr(pos, end - pos));
                    pos = end < input.size() ? end + 1 : end;
                } else {
                    size_t start = pos;
                    while (pos < input.size() && input[pos] != '>' &&
                           !std::isspace(static_cast<unsigned char>(input[pos]))) {
                        ++pos;
                    }
                    value = decode_entities(input.substr(start, pos - start));
                }
            }
            if (!name.empty()) {
                bool dup = false;
                for (const auto& [k, v] : attrs) {
                    if (k == name) { dup = true; break; }
                }
                if (!dup) attrs.emplace_back(std::move(name), std::move(value));
            }
        }
    }

    void consume_raw_content(const std::string& tag, bool decode) {
        std::string close = "</" + tag;
        size_t end = find_ci(close, pos);
        while (end != std::string_view::npos) {
            size_t after = end + close.size();
            if (after >= input.size() || input[after] == '>' ||
                std::isspace(static_cast<unsigned char>(input[after]))) {
                break;
            }
            end = find_ci(close, end + 1);
        }
        if (end == std::string_view::npos) end = input.size();
        std::string_view content = input.substr(pos, end - pos);
        if (!content.empty()) {
            builder.add_text(decode ? decode_entities(content)
                                    : std::string(content));
        }
        pos = end;
        if (pos < input.size()) {
            pos = skip_past('>');
        }
        builder.pop_raw_element();
    }

    size_t find_ci(const std::string& needle, size_t from) const {
        if (needle.empty() || from >= input.size()) return std::string_view::npos;
        for (size_t i = from; i + needle.size() <= input.size(); ++i) {
            bool hit = true;
            for (size_t k = 0; k < needle.size(); ++k) {
                if (std::tolower(static_cast<unsigned char>(input[i + k])) !=
                    std::tolower(static_cast<unsigned char>(needle[k]))) {
                    hit = false;
                    break;
                }
            }
            if (hit) return i;
        }
        return std::string_view::npos;
    }
};

}  // namespace

Document parse_html(std::string_view raw, const ParseOptions& opts) {
    if (raw.empty() || text::normalize_ws(raw).empty()) {
        throw EmptyInputError("input HTML is empty or whitespace-only");
    }
    std::string repaired;
    std::string_view input = raw;
    if (!text::validate_utf8(raw)) {
        if (!opts.lossy_utf8) {
            throw EncodingError("input is not valid UTF-8");
        }
        repaired = text::replace_invalid_utf8(raw);
        input = repaired;
    }

    Document doc;
    TreeBuilder builder(doc);
    Tokenizer tokenizer{input, 0, builder};
    tokenizer.run();
    builder.finish();
    return doc;
}

// ---------------------------------------------------------------------------
// Traversal
// ---------------------------------------------------------------------------

std::vector<const DomNode*> text_descendants(const DomNode& node,
                                             const TagBlacklist& blacklist) {
    std::vector<const DomNode*> out;
    std::vector<const DomNode*> stack;
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
        stack.push_back(*it);
    }
    while (!stack.empty()) {
        const DomNode* cur = stack.back();
        stack.pop_back();
        if (cur->is_text()) {
            if (!cur->normalized_text().empty()) out.push_back(cur);
            continue;
        }
        if (blacklist.contains(cur->tag)) continue;
        for (auto it = cur->children.rbegin(); it != cur->children.rend(); ++it) {
            stack.push_back(*it);
        }
    }
    return out;
}

bool has_text_descendant(const DomNode& node, const TagBlacklist& blacklist) {
    std::vector<const DomNode*> stack;
    for (const DomNode* c : node.children) stack.push_back(c);
    while (!stack.empty()) {
        const DomNode* cur = stack.back();
        stack.pop_back();
        if (cur->is_text()) {
            if (!cur->normalized_text().empty()) return true;
            continue;
        }
        if (blacklist.contains(cur->tag)) continue;
        for (const DomNode* c : cur->children) stack.push_back(c);
    }
    return false;
}

std::string Wrapper::to_string() const {
    std::string out;
    for (size_t i = 0; i < signature.size(); ++i) {
        if (i > 0) out += '>';
        out += signature[i];
    }
    return out;
}

Wrapper wrapper_of(const DomNode& text_node, const DomNode* stop_at) {
    Wrapper w;
    const DomNode* cur = text_node.parent;
    while (cur != nullptr && cur != stop_at) {
        w.signature.push_back(cur->tag);
        cur = cur->parent;
    }
    if (w.signature.empty() && text_node.parent != nullptr) {
        w.signature.push_back(text_node.parent->tag);
    }
    return w;
}

// ---------------------------------------------------------------------------
// Serialization / paths
// ---------------------------------------------------------------------------

namespace {

void serialize_rec(const DomNode& node, std::string& out) {
    if (node.is_text()) {
        bool raw = node.parent != nullptr &&
                   is_raw_text_element(node.parent->tag);
        out += raw ? node.text : escape_text(node.text);
        return;
    }
    out += '<';
    out += node.tag;
    for (const auto& [k, v] : node.attributes) {
        out += ' ';
        out += k;
        out += "=\"";
        out += escape_attr(v);
        out += '"';
    }
    out += '>';
    if (void_elements().count(node.tag) > 0) return;
    for (const DomNode* c : node.children) serialize_rec(*c, out);
    out += "</";
    out += node.tag;
    out += '>';
}

}  // namespace

std::string serialize(const DomNode& node) {
    std::string out;
    serialize_rec(node, out);
    return out;
}

std::vector<int> node_path(const DomNode& node) {
    std::vector<int> path;
    const DomNode* cur = &node;
    while (cur->parent != nullptr) {
        path.push_back(cur->element_index);
        cur = cur->parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

const DomNode* resolve_path(const DomNode& root, std::span<const int> path) {
    const DomNode* cur = &root;
    for (int idx : path) {
        const DomNode* next = nullptr;
        for (const DomNode* c : cur->children) {
            if (c->is_element() && c->element_index == idx) {
                next = c;
                break;
            }
        }
        if (next == nullptr) return nullptr;
        cur = next;
    }
    return cur;
}

DomNode* resolve_path(DomNode& root, std::span<const int> path) {
    return const_cast<DomNode*>(
        resolve_path(static_cast<const DomNode&>(root), path));
}

}  // namespace specmine::dom
