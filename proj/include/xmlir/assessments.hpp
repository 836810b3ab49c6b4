#pragma once

#include "xmlir/corpus.hpp"
#include "xmlir/pipeline.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace xmlir {

/// (document, element) pair used as the unit of judgment.
struct ElementRef {
    DocId doc;
    ElementPath path;

    auto operator<=>(const ElementRef&) const = default;
};

using ElementSet = std::set<ElementRef>;

struct AssessmentEntry {
    DocId doc;
    ElementPath path;
    int exhaustivity = 0;  // E, 0..3
    int specificity = 0;   // S, 0..3
};

struct AssessmentSet {
    TopicId topic_id = 0;
    std::vector<AssessmentEntry> entries;
};

struct AssessmentFile {
    std::vector<AssessmentSet> sets;
    std::vector<Diagnostic> diagnostics;
};

/// Reads INEX assessments:
///   <assessments topic="117">
///     <file file="ic/1999/w4095">
///       <path E="3" S="3" path="/article[1]"/>
///   ...
/// Several <assessments> blocks may be wrapped in one root element. Entries
/// with out-of-range grades, bad paths or a repeated (doc, path) are
/// reported and dropped. Non-XML input throws ParseError.
AssessmentFile parse_assessments(std::string_view xml, const std::string& source = "assessments");

/// Loads every *.xml file under `dir` (sorted by name). Sets for the same
/// topic coming from different files are merged.
AssessmentFile load_assessments(const std::string& dir);

enum class RelevanceCase { Original, General, Specific };

std::string_view to_string(RelevanceCase relevance_case);
RelevanceCase parse_relevance_case(std::string_view text);

/// Entries judged E=3 and S=3.
ElementSet highly_relevant(const AssessmentSet& set);

/// ORIGINAL: all highly relevant elements. GENERAL: those without a highly
/// relevant proper ancestor in the same document. SPECIFIC: those without a
/// highly relevant proper descendant.
ElementSet derive_view(const AssessmentSet& set, RelevanceCase relevance_case);

/// Tag of the last path step -> number of view members, over all topics.
std::map<std::string, std::size_t> element_distribution(const std::vector<AssessmentSet>& sets,
                                                        RelevanceCase relevance_case);

enum class TopicCategory { Broad, Narrow, Neutral };

std::string_view to_string(TopicCategory category);

struct CategoryCounts {
    std::size_t root_elements = 0;   // GENERAL members that are document roots
    std::size_t other_elements = 0;  // remaining GENERAL members
};

/// Throws InvalidArgument when the topic has no highly relevant element.
CategoryCounts category_counts(const AssessmentSet& set);
TopicCategory categorize(const CategoryCounts& counts);
TopicCategory categorize_topic(const AssessmentSet& set);

/// Judged paths that do not resolve against `corpus`.
std::vector<Diagnostic> unresolved_assessments(const AssessmentSet& set, const Corpus& corpus);

}  // namespace xmlir
