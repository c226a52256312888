#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "specmine/errors.hpp"

namespace specmine::dom {

enum class NodeKind { Element, Text };

// One node of a parsed page. Nodes are owned by their Document's arena and
// linked into a tree through raw pointers; detaching a subtree (decompose)
// never destroys nodes, so extraction can keep working on detached blocks.
struct DomNode {
    NodeKind kind = NodeKind::Element;
    std::string tag;   // elements only, lowercase
    std::string text;  // text nodes only, entity-decoded source text
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<DomNode*> children;
    DomNode* parent = nullptr;
    int node_id = -1;
    // Index among the parent's element children, assigned at parse time and
    // never rewritten; structural paths stay valid after decompose.
    int element_index = -1;

    bool is_element() const { return kind == NodeKind::Element; }
    bool is_text() const { return kind == NodeKind::Text; }

    std::optional<std::string_view> attribute(std::string_view name) const;
    // Whitespace-normalized text content (text nodes). The stored source
    // text is never mutated.
    std::string normalized_text() const;
    size_t element_child_count() const;
};

// Tags whose subtrees never carry user-visible specification content.
class TagBlacklist {
public:
    TagBlacklist() = default;
    explicit TagBlacklist(std::initializer_list<std::string> tags);
    explicit TagBlacklist(const std::vector<std::string>& tags);

    bool contains(std::string_view tag) const;
    bool empty() const { return tags_.empty(); }
    std::vector<std::string> sorted_tags() const;

    // The default set: script/style/head machinery plus page chrome
    // (nav, footer, header) and form controls.
    static const TagBlacklist& standard();

private:
    std::unordered_set<std::string> tags_;
};

struct ParseOptions {
    // Replace invalid UTF-8 with U+FFFD instead of failing.
    bool lossy_utf8 = true;
};

class Document {
public:
    Document() = default;
    Document(Document&&) = default;
    Document& operator=(Document&&) = default;
    Document(const Document&) = delete;
    Document& operator=(const Document&) = delete;

    DomNode& root() { return *root_; }
    const DomNode& root() const { return *root_; }
    // Traversal entry point: the <body> element, or the root when the page
    // has no body.
    DomNode& body() { return *body_; }
    const DomNode& body() const { return *body_; }

    DomNode* node_by_id(int id);
    const DomNode* node_by_id(int id) const;
    size_t node_count() const { return arena_.size(); }

    // Detaches `node` and its subtree from the tree; traversals from the
    // root never see it again. The nodes stay alive (owned by the arena)
    // so callers may keep extracting from the detached block.
    void decompose(DomNode& node);

    // True when walking parent links from `node` reaches the root.
    bool attached(const DomNode& node) const;

    // Allocates a node owned by this document; linking it into the tree
    // (parent/children/element_index) is the caller's job. Used by the
    // parser and by tests that assemble fixture trees directly.
    DomNode* make_node(NodeKind kind);

    void set_root(DomNode* root) { root_ = root; }
    void set_body(DomNode* body) { body_ = body; }

    std::string source_path;
    std::string page_id;

private:
    std::vector<std::unique_ptr<DomNode>> arena_;
    DomNode* root_ = nullptr;
    DomNode* body_ = nullptr;
};

// Parses raw HTML with standard error recovery (implicit closes for
// li/dt/dd/p/tr/td/..., void elements, stray end tags ignored) so real
// pages always yield a tree. Synthesizes <html>/<body> when absent.
// Throws EmptyInputError / EncodingError per ParseOptions.
Document parse_html(std::string_view raw, const ParseOptions& opts = {});

// All Text descendants of `node` in document order whose normalized
// content is non-empty, skipping blacklisted subtrees.
std::vector<const DomNode*> text_descendants(const DomNode& node,
                                             const TagBlacklist& blacklist);

// True when `node` has at least one non-whitespace Text descendant at any
// depth (outside blacklisted subtrees).
bool has_text_descendant(const DomNode& node, const TagBlacklist& blacklist);

// Tag signature of a text cell: the parent's tag followed by ancestor tags
// walking upward, stopping before `stop_at` (or at the tree root when
// null). When the parent is `stop_at` itself the signature still carries
// the parent tag, keeping signatures non-empty.
struct Wrapper {
    std::vector<std::string> signature;

    bool operator==(const Wrapper&) const = default;
    bool operator<(const Wrapper& other) const {
        return signature < other.signature;
    }
    std::string to_string() const;
};

Wrapper wrapper_of(const DomNode& text_node, const DomNode* stop_at = nullptr);

// Serializes a subtree back to HTML (attributes kept, text re-escaped).
std::string serialize(const DomNode& node);

// Structural path from the document root: element-child indices, root
// excluded. Uses parse-time indices, so paths refer to the original
// document even after decomposition.
std::vector<int> node_path(const DomNode& node);

// Resolves a path against `root`; null when any index is missing.
const DomNode* resolve_path(const DomNode& root, std::span<const int> path);
DomNode* resolve_path(DomNode& root, std::span<const int> path);

}  // namespace specmine::dom
