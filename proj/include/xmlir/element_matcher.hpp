#pragma once

#include "xmlir/corpus.hpp"

#include <string>
#include <vector>

namespace xmlir {

enum class MatchMode { And, Or };

/// Keyword predicate evaluated against an element's subtree token set.
class ElementQuery {
  public:
    /// Terms are deduplicated; throws InvalidArgument when none remain.
    ElementQuery(std::vector<std::string> terms, MatchMode mode);

    [[nodiscard]] const std::vector<std::string>& terms() const noexcept { return terms_; }
    [[nodiscard]] MatchMode mode() const noexcept { return mode_; }

  private:
    std::vector<std::string> terms_;  // sorted, unique
    MatchMode mode_;
};

struct MatchingElement {
    DocOrdinal ordinal = 0;
    DocId doc;
    ElementPath path;
    NodeId node = kNoNode;

    bool operator==(const MatchingElement&) const = default;
};

/// Most specific elements whose subtree satisfies the query, in document
/// order. `ordinal` is copied into the results.
std::vector<MatchingElement> match_elements(const DocumentTree& tree, const ElementQuery& query,
                                            DocOrdinal ordinal = 0);

/// Per-document matches concatenated in ingestion order.
std::vector<MatchingElement> collection_match(const Corpus& corpus, const ElementQuery& query);

}  // namespace xmlir
