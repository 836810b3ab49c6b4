#pragma once

#include "xmlir/article_ranker.hpp"
#include "xmlir/corpus.hpp"
#include "xmlir/cre.hpp"
#include "xmlir/element_matcher.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace xmlir {

using TopicId = long;

struct Topic {
    TopicId id = 0;
    std::string title;
    std::string description;
    std::string narrative;
    std::vector<std::string> keywords;  // comma-separated phrases, trimmed
};

struct TopicFile {
    std::vector<Topic> topics;
    std::vector<Diagnostic> diagnostics;
};

/// Reads INEX CO topics: either a single <inex_topic> root or any root
/// element wrapping several of them. Topics that cannot be read are
/// reported and skipped; a file that is not XML throws ParseError.
TopicFile parse_topics(std::string_view xml, const std::string& source = "topics");
TopicFile load_topics(const std::string& path);

struct TopicQueries {
    std::vector<std::string> article_terms;  // flat bag, duplicates kept
    ElementQuery and_query;
    ElementQuery or_query;
};

/// Keyword phrases are decomposed into their terms. Throws InvalidArgument
/// naming the topic when no keyword term is present.
TopicQueries translate_topic(const Topic& topic, const TokenizerConfig& tokenizer = {});

enum class System { FullText, XmlDb, Hybrid };

std::string_view to_string(System system);
/// Accepts "fulltext", "xmldb" or "hybrid".
System parse_system(std::string_view text);

struct SystemConfig {
    System system = System::Hybrid;
    bool cre_enabled = false;  // ignored for FullText
    HeuristicCombo combo = HeuristicCombo::parse("MpE");
    ResultLimit n_per_article = std::nullopt;
    double slope = 0.55;
    std::size_t max_results = 1500;
    TokenizerConfig tokenizer;

    /// Label used in run files, e.g. "fulltext", "xmldb-n10", "hybrid-cre-MpE-nall".
    [[nodiscard]] std::string tag() const;
};

/// "1", "10", "all" and any other positive integer.
ResultLimit parse_limit(std::string_view text);
std::string limit_to_string(const ResultLimit& limit);

struct RunEntry {
    std::size_t rank = 0;
    DocId doc;
    ElementPath path;
    std::optional<double> score;

    bool operator==(const RunEntry&) const = default;
};

struct RunResult {
    TopicId topic_id = 0;
    std::vector<RunEntry> entries;

    bool operator==(const RunResult&) const = default;
};

/// Read-only context shared by all runs over one collection.
struct RetrievalContext {
    const Corpus& corpus;
    const InvertedIndex& index;
};

RunResult run_fulltext(const RetrievalContext& ctx, const Topic& topic, const SystemConfig& config);
RunResult run_xmldb(const RetrievalContext& ctx, const Topic& topic, const SystemConfig& config);
RunResult run_hybrid(const RetrievalContext& ctx, const Topic& topic, const SystemConfig& config);
/// Dispatches on config.system.
RunResult run_system(const RetrievalContext& ctx, const Topic& topic, const SystemConfig& config);

/// One document's answer list: AND matches followed by the OR matches not
/// already present, then either truncated to `n_per_article` or replaced by
/// the ranked CRE list.
std::vector<ElementPath> article_answer_list(const DocumentTree& tree, const TopicQueries& queries,
                                             const SystemConfig& config);

/// Tab-separated run line:
///   topic_id  rank  doc_id  element_path  score_or_dash  system_tag
void write_run(std::ostream& out, const RunResult& run, const std::string& system_tag);

struct RunFile {
    std::map<TopicId, RunResult> runs;
    std::string system_tag;  // tag of the first line
};

/// Throws ParseError with the line number of the first malformed line.
RunFile read_run(std::istream& in);

}  // namespace xmlir
