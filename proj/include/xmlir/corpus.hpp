#pragma once

#include "xmlir/element_path.hpp"
#include "xmlir/error.hpp"

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace xmlir {

/// Term processing applied to element text and to query keywords.
/// Text is split on every character that is not an ASCII letter or digit;
/// bytes >= 0x80 are kept inside tokens so UTF-8 words stay whole.
struct TokenizerConfig {
    bool lowercase = true;
    std::size_t min_length = 1;
};

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config = {});

/// Term -> occurrence count.
using TermCounts = std::map<std::string, std::uint32_t>;

/// Relative file path without the ".xml" suffix, e.g. "ic/1999/w4095".
struct DocId {
    std::string value;

    auto operator<=>(const DocId&) const = default;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct ElementNode {
    std::string tag;
    std::uint32_t sibling_index = 1;  // among same-tag siblings
    NodeId parent = kNoNode;
    std::vector<NodeId> children;
    std::vector<std::string> tokens;  // text directly inside this element
    NodeId subtree_end = 0;           // descendants occupy (id, subtree_end)
    std::size_t subtree_size = 0;     // token count including descendants
};

/// A parsed document. Nodes are stored in pre-order, so node ids follow
/// document order and every subtree is a contiguous id range.
class DocumentTree {
  public:
    /// Throws ParseError for malformed XML.
    static DocumentTree parse(DocId doc, std::string_view xml, const TokenizerConfig& config = {});

    [[nodiscard]] const DocId& doc() const noexcept { return doc_; }
    [[nodiscard]] NodeId root() const noexcept { return 0; }
    [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
    [[nodiscard]] const ElementNode& node(NodeId id) const { return nodes_.at(id); }
    [[nodiscard]] std::span<const ElementNode> nodes() const noexcept { return nodes_; }

    [[nodiscard]] std::optional<NodeId> resolve(const ElementPath& path) const;
    [[nodiscard]] ElementPath path_of(NodeId id) const;
    /// Proper ancestry.
    [[nodiscard]] bool is_ancestor(NodeId ancestor, NodeId descendant) const noexcept;

    [[nodiscard]] TermCounts subtree_terms(NodeId id) const;
    [[nodiscard]] TermCounts document_terms() const { return subtree_terms(root()); }
    [[nodiscard]] std::size_t token_count() const noexcept { return nodes_.empty() ? 0 : nodes_[0].subtree_size; }

  private:
    friend class TreeBuilder;
    DocId doc_;
    std::vector<ElementNode> nodes_;
};

/// Returns the node addressed by `path`, or nothing.
std::optional<NodeId> resolve_path(const DocumentTree& tree, const ElementPath& path);

/// Token multiset of the element at `path` and its descendants.
/// Throws InvalidArgument when the path does not resolve.
TermCounts subtree_terms(const DocumentTree& tree, const ElementPath& path);

/// Position of a document in ingestion order.
using DocOrdinal = std::uint32_t;

/// Immutable collection of parsed documents in ingestion order.
class Corpus {
  public:
    Corpus() = default;
    explicit Corpus(std::vector<DocumentTree> docs, std::vector<Diagnostic> diagnostics = {});

    [[nodiscard]] std::size_t size() const noexcept { return docs_.size(); }
    [[nodiscard]] bool empty() const noexcept { return docs_.empty(); }
    [[nodiscard]] const DocumentTree& doc(DocOrdinal ordinal) const { return docs_.at(ordinal); }
    [[nodiscard]] std::span<const DocumentTree> docs() const noexcept { return docs_; }
    [[nodiscard]] std::optional<DocOrdinal> find(const DocId& id) const;
    [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

  private:
    std::vector<DocumentTree> docs_;
    std::unordered_map<std::string, DocOrdinal> by_id_;
    std::vector<Diagnostic> diagnostics_;
};

/// Parses every *.xml file below `root`. Files are ingested in sorted
/// relative-path order; malformed files are skipped with a diagnostic.
/// Throws Error when `root` is not a readable directory.
Corpus ingest_corpus(const std::filesystem::path& root, const TokenizerConfig& config = {});

}  // namespace xmlir
