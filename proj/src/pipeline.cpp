#include "xmlir/pipeline.hpp"

#include "xml_sax.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace xmlir {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += static_cast<char>(c);
    }
    return out;
}

std::vector<std::string> split_keywords(std::string_view text) {
    std::vector<std::string> phrases;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        auto phrase = collapse_whitespace(text.substr(start, comma - start));
        if (!phrase.empty()) {
            phrases.push_back(std::move(phrase));
        }
        start = comma + 1;
    }
    return phrases;
}

std::string format_score(double score) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, score);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void append_entries(RunResult& run, const DocId& doc, const std::vector<ElementPath>& paths, std::size_t cap) {
    for (const auto& path : paths) {
        if (run.entries.size() >= cap) {
            return;
        }
        run.entries.push_back(RunEntry{run.entries.size() + 1, doc, path, std::nullopt});
    }
}

}  // namespace

TopicFile parse_topics(std::string_view xml, const std::string& source) {
    TopicFile file;
    std::optional<Topic> current;
    std::string topic_id_text;
    std::string field;
    std::string text;
    std::size_t topic_counter = 0;

    detail::SaxHandler handler;
    handler.on_start = [&](std::string_view name, const detail::XmlAttributes& attrs) {
        auto tag = lower(name);
        if (tag == "inex_topic") {
            current.emplace();
            ++topic_counter;
            topic_id_text = std::string(detail::find_attribute(attrs, "topic_id"));
            field.clear();
        } else if (current && field.empty() &&
                   (tag == "title" || tag == "description" || tag == "narrative" || tag == "keywords")) {
            field = tag;
            text.clear();
        }
    };
    handler.on_text = [&](std::string_view chunk) {
        if (current && !field.empty()) {
            text.append(chunk);
        }
    };
    handler.on_end = [&](std::string_view name) {
        auto tag = lower(name);
        if (current && tag == field) {
            if (field == "title") {
                current->title = collapse_whitespace(text);
            } else if (field == "description") {
                current->description = collapse_whitespace(text);
            } else if (field == "narrative") {
                current->narrative = collapse_whitespace(text);
            } else {
                current->keywords = split_keywords(text);
            }
            field.clear();
        } else if (current && tag == "inex_topic") {
            auto id_text = collapse_whitespace(topic_id_text);
            TopicId id = 0;
            auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
            if (id_text.empty() || ec != std::errc{} || ptr != id_text.data() + id_text.size()) {
                file.diagnostics.push_back({source, "topic #" + std::to_string(topic_counter) +
                                                        " has no numeric topic_id ('" + id_text + "')"});
            } else {
                current->id = id;
                file.topics.push_back(std::move(*current));
            }
            current.reset();
        }
    };
    detail::parse_xml(xml, handler);
    return file;
}

TopicFile load_topics(const std::string& path) { return parse_topics(detail::read_file(path), path); }

TopicQueries translate_topic(const Topic& topic, const TokenizerConfig& tokenizer) {
    std::vector<std::string> bag;
    for (const auto& phrase : topic.keywords) {
        auto terms = tokenize(phrase, tokenizer);
        bag.insert(bag.end(), terms.begin(), terms.end());
    }
    if (bag.empty()) {
        throw InvalidArgument("topic " + std::to_string(topic.id) + " has no keyword terms");
    }
    return TopicQueries{bag, ElementQuery(bag, MatchMode::And), ElementQuery(bag, MatchMode::Or)};
}

std::string_view to_string(System system) {
    switch (system) {
        case System::FullText: return "fulltext";
        case System::XmlDb: return "xmldb";
        case System::Hybrid: return "hybrid";
    }
    return "unknown";
}

System parse_system(std::string_view text) {
    if (text == "fulltext") {
        return System::FullText;
    }
    if (text == "xmldb") {
        return System::XmlDb;
    }
    if (text == "hybrid") {
        return System::Hybrid;
    }
    throw InvalidArgument("unknown system '" + std::string(text) + "'");
}

ResultLimit parse_limit(std::string_view text) {
    if (text == "all" || text == "ALL") {
        return std::nullopt;
    }
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
        throw InvalidArgument("per-article limit must be a positive integer or 'all', got '" + std::string(text) + "'");
    }
    return value;
}

std::string limit_to_string(const ResultLimit& limit) { return limit ? std::to_string(*limit) : "all"; }

std::string SystemConfig::tag() const {
    std::string out(to_string(system));
    if (system == System::FullText) {
        return out;
    }
    if (cre_enabled) {
        out += "-cre-" + combo.str();
    }
    return out + "-n" + limit_to_string(n_per_article);
}

std::vector<ElementPath> article_answer_list(const DocumentTree& tree, const TopicQueries& queries,
                                             const SystemConfig& config) {
    auto and_matches = match_elements(tree, queries.and_query);
    auto or_matches = match_elements(tree, queries.or_query);

    std::vector<ElementPath> merged;
    merged.reserve(and_matches.size() + or_matches.size());
    std::set<ElementPath> in_and;
    for (auto& m : and_matches) {
        in_and.insert(m.path);
        merged.push_back(std::move(m.path));
    }
    for (auto& m : or_matches) {
        if (!in_and.contains(m.path)) {
            merged.push_back(std::move(m.path));
        }
    }
    if (merged.empty()) {
        return merged;
    }

    if (config.cre_enabled) {
        auto ranked = rank_cres(identify_cres(tree.doc(), merged), config.combo, config.n_per_article);
        std::vector<ElementPath> out;
        out.reserve(ranked.size());
        for (auto& record : ranked) {
            out.push_back(std::move(record.path));
        }
        return out;
    }
    if (config.n_per_article && merged.size() > *config.n_per_article) {
        merged.resize(*config.n_per_article);
    }
    return merged;
}

RunResult run_fulltext(const RetrievalContext& ctx, const Topic& topic, const SystemConfig& config) {
    auto queries = translate_topic(topic, config.tokenizer);
    RunResult run{topic.id, {}};
    auto ranked = rank_articles(ctx.index, queries.article_terms, RankParams{config.slope, config.max_results});
    for (const auto& article : ranked) {
        const auto& tree = ctx.corpus.doc(article.ordinal);
        run.entries.push_back(RunEntry{article.rank, article.doc, tree.path_of(tree.root()), article.score});
    }
    return run;
}

RunResult run_xmldb(const RetrievalContext& ctx, const Topic& topic, const SystemConfig& config) {
    auto queries = translate_topic(topic, config.tokenizer);
    RunResult run{topic.id, {}};
    for (const auto& tree : ctx.corpus.docs()) {
        if (run.entries.size() >= config.max_results) {
            break;
        }
        append_entries(run, tree.doc(), article_answer_list(tree, queries, config), config.max_results);
    }
    return run;
}

RunResult run_hybrid(const RetrievalContext& ctx, const Topic& topic, const SystemConfig& config) {
    auto queries = translate_topic(topic, config.tokenizer);
    RunResult run{topic.id, {}};
    auto ranked = rank_articles(ctx.index, queries.article_terms, RankParams{config.slope, config.max_results});
    for (const auto& article : ranked) {
        if (run.entries.size() >= config.max_results) {
            break;
        }
        const auto& tree = ctx.corpus.doc(article.ordinal);
        append_entries(run, tree.doc(), article_answer_list(tree, queries, config), config.max_results);
    }
    return run;
}

RunResult run_system(const RetrievalContext& ctx, const Topic& topic, const SystemConfig& config) {
    switch (config.system) {
        case System::FullText: return run_fulltext(ctx, topic, config);
        case System::XmlDb: return run_xmldb(ctx, topic, config);
        case System::Hybrid: return run_hybrid(ctx, topic, config);
    }
    throw InvalidArgument("unknown system");
}

void write_run(std::ostream& out, const RunResult& run, const std::string& system_tag) {
    for (const auto& entry : run.entries) {
        out << run.topic_id << '\t' << entry.rank << '\t' << entry.doc.value << '\t' << entry.path.str() << '\t'
            << (entry.score ? format_score(*entry.score) : std::string("-")) << '\t' << system_tag << '\n';
    }
}

RunFile read_run(std::istream& in) {
    RunFile file;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string_view> fields;
        std::string_view view(line);
        std::size_t start = 0;
        while (true) {
            auto tab = view.find('\t', start);
            fields.push_back(view.substr(start, tab == std::string_view::npos ? tab : tab - start));
            if (tab == std::string_view::npos) {
                break;
            }
            start = tab + 1;
        }
        auto fail = [&](const std::string& what) {
            return ParseError("run file line " + std::to_string(line_no) + ": " + what);
        };
        if (fields.size() != 6) {
            throw fail("expected 6 tab-separated fields");
        }
        TopicId topic = 0;
        std::size_t rank = 0;
        auto [p1, e1] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), topic);
        auto [p2, e2] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), rank);
        if (e1 != std::errc{} || p1 != fields[0].data() + fields[0].size() || e2 != std::errc{} ||
            p2 != fields[1].data() + fields[1].size() || rank == 0) {
            throw fail("bad topic id or rank");
        }
        if (fields[2].empty()) {
            throw fail("empty document id");
        }
        RunEntry entry{rank, DocId{std::string(fields[2])}, {}, std::nullopt};
        try {
            entry.path = ElementPath::parse(fields[3]);
        } catch (const ParseError& e) {
            throw fail(e.what());
        }
        if (fields[4] != "-") {
            double score = 0.0;
            auto [p3, e3] = std::from_chars(fields[4].data(), fields[4].data() + fields[4].size(), score);
            if (e3 != std::errc{} || p3 != fields[4].data() + fields[4].size()) {
                throw fail("bad score");
            }
            entry.score = score;
        }
        if (file.system_tag.empty()) {
            file.system_tag = std::string(fields[5]);
        }
        auto& run = file.runs[topic];
        run.topic_id = topic;
        run.entries.push_back(std::move(entry));
    }
    for (auto& [topic, run] : file.runs) {
        std::stable_sort(run.entries.begin(), run.entries.end(),
                         [](const RunEntry& a, const RunEntry& b) { return a.rank < b.rank; });
    }
    return file;
}

}  // namespace xmlir
