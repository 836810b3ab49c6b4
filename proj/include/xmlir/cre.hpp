#pragma once

// Coherent Retrieval Elements: ancestors that gather matching elements from
// at least two different child branches, ranked by match count, path length
// and position within the article.

#include "xmlir/corpus.hpp"
#include "xmlir/element_matcher.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xmlir {

struct CreRecord {
    DocId doc;
    ElementPath path;
    std::size_t matches = 0;  // input matching elements strictly below `path`
    std::size_t length = 0;   // number of path steps
    SequenceKey sequence;
    // Input position of the first matching element below the record; input
    // lists arrive in article order, so this orders equal-sequence records
    // (bdy[1] vs bm[1]) by where they occur in the document.
    std::size_t first_match = 0;

    bool operator==(const CreRecord&) const = default;
};

/// Three-letter ranking code such as "MpE": primary key and direction,
/// secondary key and direction, then B/E position tie-break.
///   M / m  more / fewer matches first
///   P / p  longer / shorter path first
///   B / E  smaller / larger sequence first
class HeuristicCombo {
  public:
    /// Throws InvalidArgument unless `code` is one of the 16 valid combos.
    static HeuristicCombo parse(std::string_view code);
    static std::array<HeuristicCombo, 16> all();

    [[nodiscard]] char primary() const noexcept { return primary_; }
    [[nodiscard]] char secondary() const noexcept { return secondary_; }
    [[nodiscard]] char tertiary() const noexcept { return tertiary_; }
    [[nodiscard]] std::string str() const { return {primary_, secondary_, tertiary_}; }

    /// Strict weak "ranks before" relation; total over records of one document.
    [[nodiscard]] bool before(const CreRecord& a, const CreRecord& b) const;

    bool operator==(const HeuristicCombo&) const = default;

  private:
    HeuristicCombo(char primary, char secondary, char tertiary)
        : primary_(primary), secondary_(secondary), tertiary_(tertiary) {}

    char primary_;
    char secondary_;
    char tertiary_;
};

/// Absent means "all".
using ResultLimit = std::optional<std::size_t>;

/// CREs of one document's matching-element list, in document order.
/// A single input element is returned as its own record with one match.
/// Matching elements themselves are never emitted when the list has more
/// than one entry. Throws InvalidArgument for an empty list, duplicate
/// paths, or paths from different documents/roots.
std::vector<CreRecord> identify_cres(const DocId& doc, std::span<const ElementPath> matching);
std::vector<CreRecord> identify_cres(std::span<const MatchingElement> matching);

std::vector<CreRecord> rank_cres(std::span<const CreRecord> cres, const HeuristicCombo& combo,
                                 ResultLimit limit = std::nullopt);

}  // namespace xmlir
