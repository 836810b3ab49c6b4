#include "xmlir/article_ranker.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace xmlir {

namespace {

constexpr std::string_view kIndexMagic = "xmlir-index 1";

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("index: bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

double mean_length(const std::vector<std::uint32_t>& lengths) {
    if (lengths.empty()) {
        return 0.0;
    }
    double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
    return total / static_cast<double>(lengths.size());
}

}  // namespace

const std::vector<Posting>* InvertedIndex::postings(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? nullptr : &it->second;
}

InvertedIndex build_index(const Corpus& corpus) {
    if (corpus.empty()) {
        throw InvalidArgument("cannot index an empty corpus");
    }
    InvertedIndex index;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& tree = corpus.doc(static_cast<DocOrdinal>(i));
        index.doc_ids_.push_back(tree.doc());
        index.doc_lengths_.push_back(static_cast<std::uint32_t>(tree.token_count()));
        for (const auto& [term, tf] : tree.document_terms()) {
            index.postings_[term].push_back(Posting{static_cast<DocOrdinal>(i), tf});
        }
    }
    index.avg_doc_length_ = mean_length(index.doc_lengths_);
    return index;
}

std::vector<ScoredArticle> rank_articles(const InvertedIndex& index, const std::vector<std::string>& query,
                                         const RankParams& params) {
    if (params.slope < 0.0 || params.slope > 1.0) {
        throw InvalidArgument("slope must lie in [0,1]");
    }
    std::vector<ScoredArticle> results;
    if (query.empty() || index.doc_count() == 0 || params.max_results == 0) {
        return results;
    }
    const auto n_docs = static_cast<double>(index.doc_count());
    std::vector<double> accumulators(index.doc_count(), 0.0);
    std::unordered_set<std::string> seen;
    for (const auto& term : query) {
        if (!seen.insert(term).second) {
            continue;
        }
        const auto* list = index.postings(term);
        if (list == nullptr || list->empty()) {
            continue;
        }
        double query_weight = std::log(1.0 + n_docs / static_cast<double>(list->size()));
        for (const auto& posting : *list) {
            accumulators[posting.doc] += query_weight * (1.0 + std::log(static_cast<double>(posting.tf)));
        }
    }

    const double avg = index.avg_doc_length();
    for (std::size_t d = 0; d < accumulators.size(); ++d) {
        if (accumulators[d] <= 0.0) {
            continue;
        }
        double ratio = avg > 0.0 ? index.doc_lengths()[d] / avg : 1.0;
        double norm = (1.0 - params.slope) + params.slope * ratio;
        results.push_back(ScoredArticle{static_cast<DocOrdinal>(d), index.doc_ids()[d], accumulators[d] / norm, 0});
    }
    auto by_score = [](const ScoredArticle& a, const ScoredArticle& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.ordinal < b.ordinal;
    };
    if (results.size() > params.max_results) {
        std::partial_sort(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(params.max_results),
                          results.end(), by_score);
        results.resize(params.max_results);
    } else {
        std::sort(results.begin(), results.end(), by_score);
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
        results[i].rank = i + 1;
    }
    return results;
}

void InvertedIndex::save(std::ostream& out) const {
    out << kIndexMagic << '\n' << "docs " << doc_ids_.size() << '\n';
    for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
        if (doc_ids_[i].value.find_first_of("\t\n") != std::string::npos) {
            throw InvalidArgument("document id contains a tab or newline: " + doc_ids_[i].value);
        }
        out << doc_ids_[i].value << '\t' << doc_lengths_[i] << '\n';
    }
    std::vector<const std::string*> terms;
    terms.reserve(postings_.size());
    for (const auto& entry : postings_) {
        terms.push_back(&entry.first);
    }
    std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) { return *a < *b; });
    out << "terms " << terms.size() << '\n';
    for (const auto* term : terms) {
        const auto& list = postings_.at(*term);
        out << *term << '\t' << list.size() << '\t';
        for (std::size_t i = 0; i < list.size(); ++i) {
            out << (i ? " " : "") << list[i].doc << ':' << list[i].tf;
        }
        out << '\n';
    }
}

InvertedIndex InvertedIndex::load(std::istream& in) {
    std::string line;
    auto next_line = [&](std::string_view what) {
        if (!std::getline(in, line)) {
            throw ParseError("index: unexpected end of input while reading " + std::string(what));
        }
    };
    next_line("header");
    if (line != kIndexMagic) {
        throw ParseError("index: unrecognized header '" + line + "'");
    }
    auto counted = [&](std::string_view keyword) {
        next_line(keyword);
        std::string prefix = std::string(keyword) + ' ';
        if (line.rfind(prefix, 0) != 0) {
            throw ParseError("index: expected '" + prefix + "' line");
        }
        return parse_number<std::size_t>(std::string_view(line).substr(prefix.size()), keyword);
    };

    InvertedIndex index;
    std::size_t n_docs = counted("docs");
    for (std::size_t i = 0; i < n_docs; ++i) {
        next_line("document");
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            throw ParseError("index: bad document line '" + line + "'");
        }
        index.doc_ids_.push_back(DocId{line.substr(0, tab)});
        index.doc_lengths_.push_back(parse_number<std::uint32_t>(std::string_view(line).substr(tab + 1), "length"));
    }
    std::size_t n_terms = counted("terms");
    for (std::size_t i = 0; i < n_terms; ++i) {
        next_line("postings");
        std::string_view view(line);
        auto tab1 = view.find('\t');
        auto tab2 = tab1 == std::string_view::npos ? tab1 : view.find('\t', tab1 + 1);
        if (tab2 == std::string_view::npos || tab1 == 0) {
            throw ParseError("index: bad postings line '" + line + "'");
        }
        std::string term(view.substr(0, tab1));
        auto df = parse_number<std::size_t>(view.substr(tab1 + 1, tab2 - tab1 - 1), "df");
        std::vector<Posting> list;
        std::istringstream items{std::string(view.substr(tab2 + 1))};
        std::string item;
        while (items >> item) {
            auto colon = item.find(':');
            if (colon == std::string::npos) {
                throw ParseError("index: bad posting '" + item + "'");
            }
            Posting p{parse_number<DocOrdinal>(std::string_view(item).substr(0, colon), "ordinal"),
                      parse_number<std::uint32_t>(std::string_view(item).substr(colon + 1), "tf")};
            if (p.doc >= n_docs || p.tf == 0 || (!list.empty() && list.back().doc >= p.doc)) {
                throw ParseError("index: inconsistent posting '" + item + "' for term " + term);
            }
            list.push_back(p);
        }
        if (list.size() != df) {
            throw ParseError("index: df mismatch for term " + term);
        }
        if (!index.postings_.emplace(std::move(term), std::move(list)).second) {
            throw ParseError("index: duplicate term");
        }
    }
    index.avg_doc_length_ = mean_length(index.doc_lengths_);
    return index;
}

}  // namespace xmlir
