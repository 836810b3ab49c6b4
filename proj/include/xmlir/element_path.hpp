#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace xmlir {

/// One location step: element tag plus its 1-based position among
/// same-tag siblings.
struct PathStep {
    std::string tag;
    std::uint32_t index = 1;

    auto operator<=>(const PathStep&) const = default;
};

/// Index projection of a path, e.g. /article[1]/bdy[1]/sec[2] -> 1,1,2.
/// Compared lexicographically on integer components.
using SequenceKey = std::vector<std::uint32_t>;

/// Identifies one element inside one document, written in the
/// "/article[1]/bdy[1]/sec[2]" notation.
class ElementPath {
  public:
    ElementPath() = default;
    explicit ElementPath(std::vector<PathStep> steps);

    /// Parses "/tag[i]/tag[j]..."; a step without brackets means index 1.
    /// Throws ParseError on malformed text.
    static ElementPath parse(std::string_view text);

    [[nodiscard]] std::string str() const;

    [[nodiscard]] const std::vector<PathStep>& steps() const noexcept { return steps_; }
    [[nodiscard]] std::size_t depth() const noexcept { return steps_.size(); }
    [[nodiscard]] bool empty() const noexcept { return steps_.empty(); }
    [[nodiscard]] const PathStep& leaf() const { return steps_.back(); }

    [[nodiscard]] ElementPath child(std::string tag, std::uint32_t index) const;
    [[nodiscard]] ElementPath parent() const;
    /// First `depth` steps of this path.
    [[nodiscard]] ElementPath prefix(std::size_t depth) const;

    /// True iff this path's steps are a proper prefix of `other`'s.
    [[nodiscard]] bool is_ancestor_of(const ElementPath& other) const noexcept;
    [[nodiscard]] bool is_ancestor_or_self_of(const ElementPath& other) const noexcept;

    [[nodiscard]] SequenceKey sequence() const;

    auto operator<=>(const ElementPath&) const = default;

  private:
    std::vector<PathStep> steps_;
};

struct ElementPathHash {
    std::size_t operator()(const ElementPath& path) const noexcept;
};

}  // namespace xmlir
