#pragma once

#include "xmlir/corpus.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace xmlir {

struct Posting {
    DocOrdinal doc = 0;
    std::uint32_t tf = 0;

    bool operator==(const Posting&) const = default;
};

/// Whole-document inverted index. Documents are addressed by their
/// ingestion ordinal; postings lists are sorted by ordinal.
class InvertedIndex {
  public:
    [[nodiscard]] std::size_t doc_count() const noexcept { return doc_ids_.size(); }
    [[nodiscard]] const std::vector<DocId>& doc_ids() const noexcept { return doc_ids_; }
    [[nodiscard]] const std::vector<std::uint32_t>& doc_lengths() const noexcept { return doc_lengths_; }
    [[nodiscard]] double avg_doc_length() const noexcept { return avg_doc_length_; }
    [[nodiscard]] const std::vector<Posting>* postings(const std::string& term) const;
    [[nodiscard]] const std::unordered_map<std::string, std::vector<Posting>>& all_postings() const noexcept {
        return postings_;
    }

    /// Line-oriented text format; terms are written in sorted order so equal
    /// indexes serialize to identical bytes.
    void save(std::ostream& out) const;
    /// Throws ParseError on a malformed or inconsistent stream.
    static InvertedIndex load(std::istream& in);

    bool operator==(const InvertedIndex&) const = default;

  private:
    friend InvertedIndex build_index(const Corpus& corpus);

    std::vector<DocId> doc_ids_;
    std::vector<std::uint32_t> doc_lengths_;
    double avg_doc_length_ = 0.0;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
};

struct RankParams {
    double slope = 0.55;
    std::size_t max_results = 1500;
};

struct ScoredArticle {
    DocOrdinal ordinal = 0;
    DocId doc;
    double score = 0.0;
    std::size_t rank = 0;
};

/// Throws InvalidArgument for an empty corpus.
InvertedIndex build_index(const Corpus& corpus);

/// Pivoted-cosine ranking:
///   score(d) = sum over distinct query terms t in d of w_q(t) * w_d(t) / norm(d)
///   w_d(t)   = 1 + ln tf(t,d)
///   w_q(t)   = ln(1 + N / df(t))
///   norm(d)  = (1 - slope) + slope * len(d) / avg_len
/// Zero-score documents are dropped, ties go to the earlier ordinal.
std::vector<ScoredArticle> rank_articles(const InvertedIndex& index, const std::vector<std::string>& query,
                                         const RankParams& params = {});

}  // namespace xmlir
