#include "xmlir/assessments.hpp"

#include "xml_sax.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>

namespace xmlir {

namespace {

std::optional<long> to_integer(std::string_view text) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

bool is_hr(const AssessmentEntry& e) { return e.exhaustivity == 3 && e.specificity == 3; }

}  // namespace

AssessmentFile parse_assessments(std::string_view xml, const std::string& source) {
    AssessmentFile out;
    std::optional<AssessmentSet> current;
    std::set<ElementRef> seen;
    std::string file_doc;
    bool in_file = false;

    detail::SaxHandler handler;
    handler.on_start = [&](std::string_view name, const detail::XmlAttributes& attrs) {
        if (name == "assessments") {
            auto id = to_integer(detail::find_attribute(attrs, "topic"));
            if (!id) {
                throw ParseError(source + ": <assessments> without a numeric topic attribute");
            }
            current = AssessmentSet{*id, {}};
            seen.clear();
        } else if (name == "file") {
            file_doc = std::string(detail::find_attribute(attrs, "file"));
            in_file = true;
            if (file_doc.empty()) {
                out.diagnostics.push_back({source, "<file> without a file attribute"});
            }
        } else if (name == "path" && in_file && current && !file_doc.empty()) {
            auto e = to_integer(detail::find_attribute(attrs, "E"));
            auto s = to_integer(detail::find_attribute(attrs, "S"));
            auto path_text = detail::find_attribute(attrs, "path");
            auto where = "topic " + std::to_string(current->topic_id) + ", " + file_doc + " " + std::string(path_text);
            if (!e || !s || *e < 0 || *e > 3 || *s < 0 || *s > 3) {
                out.diagnostics.push_back({source, where + ": E and S must be integers in 0..3"});
                return;
            }
            ElementPath path;
            try {
                path = ElementPath::parse(path_text);
            } catch (const ParseError& err) {
                out.diagnostics.push_back({source, err.what()});
                return;
            }
            if (!seen.insert(ElementRef{DocId{file_doc}, path}).second) {
                out.diagnostics.push_back({source, where + ": duplicate judgment ignored"});
                return;
            }
            current->entries.push_back(
                AssessmentEntry{DocId{file_doc}, std::move(path), static_cast<int>(*e), static_cast<int>(*s)});
        }
    };
    handler.on_end = [&](std::string_view name) {
        if (name == "file") {
            in_file = false;
            file_doc.clear();
        } else if (name == "assessments" && current) {
            out.sets.push_back(std::move(*current));
            current.reset();
        }
    };
    detail::parse_xml(xml, handler);
    return out;
}

AssessmentFile load_assessments(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw Error("assessment directory " + dir + " is not a readable directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".xml") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    AssessmentFile out;
    std::map<TopicId, std::size_t> slot;
    for (const auto& file : files) {
        AssessmentFile parsed;
        try {
            parsed = parse_assessments(detail::read_file(file.string()), file.string());
        } catch (const Error& e) {
            out.diagnostics.push_back({file.string(), e.what()});
            continue;
        }
        out.diagnostics.insert(out.diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
        for (auto& set : parsed.sets) {
            auto [it, inserted] = slot.try_emplace(set.topic_id, out.sets.size());
            if (inserted) {
                out.sets.push_back(std::move(set));
                continue;
            }
            auto& target = out.sets[it->second];
            std::set<ElementRef> present;
            for (const auto& e : target.entries) {
                present.insert(ElementRef{e.doc, e.path});
            }
            for (auto& e : set.entries) {
                if (present.insert(ElementRef{e.doc, e.path}).second) {
                    target.entries.push_back(std::move(e));
                } else {
                    out.diagnostics.push_back({file.string(), "topic " + std::to_string(set.topic_id) + ", " +
                                                                  e.doc.value + " " + e.path.str() +
                                                                  ": duplicate judgment ignored"});
                }
            }
        }
    }
    std::sort(out.sets.begin(), out.sets.end(),
              [](const AssessmentSet& a, const AssessmentSet& b) { return a.topic_id < b.topic_id; });
    return out;
}

std::string_view to_string(RelevanceCase relevance_case) {
    switch (relevance_case) {
        case RelevanceCase::Original: return "original";
        case RelevanceCase::General: return "general";
        case RelevanceCase::Specific: return "specific";
    }
    return "unknown";
}

RelevanceCase parse_relevance_case(std::string_view text) {
    if (text == "original") {
        return RelevanceCase::Original;
    }
    if (text == "general") {
        return RelevanceCase::General;
    }
    if (text == "specific") {
        return RelevanceCase::Specific;
    }
    throw InvalidArgument("unknown relevance case '" + std::string(text) + "'");
}

ElementSet highly_relevant(const AssessmentSet& set) {
    ElementSet out;
    for (const auto& e : set.entries) {
        if (is_hr(e)) {
            out.insert(ElementRef{e.doc, e.path});
        }
    }
    return out;
}

ElementSet derive_view(const AssessmentSet& set, RelevanceCase relevance_case) {
    auto hr = highly_relevant(set);
    if (relevance_case == RelevanceCase::Original) {
        return hr;
    }
    // Ordered by (doc, path): every element's descendants follow it
    // directly, and its ancestors come before it within the same document.
    ElementSet out;
    for (auto it = hr.begin(); it != hr.end(); ++it) {
        bool keep = true;
        if (relevance_case == RelevanceCase::General) {
            for (std::size_t depth = 1; depth < it->path.depth() && keep; ++depth) {
                keep = !hr.contains(ElementRef{it->doc, it->path.prefix(depth)});
            }
        } else {
            auto next = std::next(it);
            keep = next == hr.end() || next->doc != it->doc || !it->path.is_ancestor_of(next->path);
        }
        if (keep) {
            out.insert(*it);
        }
    }
    return out;
}

std::map<std::string, std::size_t> element_distribution(const std::vector<AssessmentSet>& sets,
                                                        RelevanceCase relevance_case) {
    std::map<std::string, std::size_t> counts;
    for (const auto& set : sets) {
        for (const auto& ref : derive_view(set, relevance_case)) {
            ++counts[ref.path.leaf().tag];
        }
    }
    return counts;
}

std::string_view to_string(TopicCategory category) {
    switch (category) {
        case TopicCategory::Broad: return "broad";
        case TopicCategory::Narrow: return "narrow";
        case TopicCategory::Neutral: return "neutral";
    }
    return "unknown";
}

CategoryCounts category_counts(const AssessmentSet& set) {
    auto general = derive_view(set, RelevanceCase::General);
    if (general.empty()) {
        throw InvalidArgument("topic " + std::to_string(set.topic_id) + " has no highly relevant elements");
    }
    CategoryCounts counts;
    for (const auto& ref : general) {
        ++(ref.path.depth() == 1 ? counts.root_elements : counts.other_elements);
    }
    return counts;
}

TopicCategory categorize(const CategoryCounts& counts) {
    if (counts.root_elements > counts.other_elements) {
        return TopicCategory::Broad;
    }
    if (counts.root_elements < counts.other_elements) {
        return TopicCategory::Narrow;
    }
    return TopicCategory::Neutral;
}

TopicCategory categorize_topic(const AssessmentSet& set) { return categorize(category_counts(set)); }

std::vector<Diagnostic> unresolved_assessments(const AssessmentSet& set, const Corpus& corpus) {
    std::vector<Diagnostic> out;
    auto source = "topic " + std::to_string(set.topic_id);
    for (const auto& e : set.entries) {
        auto ordinal = corpus.find(e.doc);
        if (!ordinal) {
            out.push_back({source, e.doc.value + " is not in the corpus"});
        } else if (!corpus.doc(*ordinal).resolve(e.path)) {
            out.push_back({source, e.doc.value + " " + e.path.str() + " does not resolve"});
        }
    }
    return out;
}

}  // namespace xmlir
