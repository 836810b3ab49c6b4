#pragma once

#include "xmlir/assessments.hpp"
#include "xmlir/corpus.hpp"
#include "xmlir/pipeline.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xmlir {

/// Binary relevance for one topic: the members of a relevance view
/// (strict quantization, E=3 and S=3) are relevant, everything else is not.
struct QuantizedJudgment {
    TopicId topic_id = 0;
    ElementSet relevant;
};

QuantizedJudgment quantize_strict(const AssessmentSet& set, RelevanceCase relevance_case);

/// One point of a recall/precision walk, kept as fractions so that integer
/// counts compare exactly against the recall levels.
struct CurvePoint {
    double recall_num = 0.0;
    double recall_den = 1.0;
    double precision = 0.0;
};

inline constexpr std::size_t kRecallLevels = 100;

/// Interpolated precision at recall levels 0.01, 0.02, ..., 1.00, where the
/// value at level r is the best precision of any point with recall >= r.
std::array<double, kRecallLevels> interpolated_precision(std::span<const CurvePoint> curve);

/// Mean of the 100 interpolated precision values.
double average_precision(std::span<const CurvePoint> curve);

/// Throws InvalidArgument when the judgment has an empty recall base.
double inex_eval_strict(const RunResult& run, const QuantizedJudgment& judgment);

/// size(element) lookup: subtree token counts from a corpus, optionally
/// overridden per element.
class ElementSizes {
  public:
    ElementSizes() = default;
    explicit ElementSizes(const Corpus& corpus) : corpus_(&corpus) {}

    void set(const ElementRef& ref, std::size_t size) { overrides_[ref] = size; }
    [[nodiscard]] std::optional<std::size_t> size(const ElementRef& ref) const;

  private:
    const Corpus* corpus_ = nullptr;
    std::map<ElementRef, std::size_t> overrides_;
};

enum class OverlapMode { S, O };

/// Size-aware variant labelled "ng-reconstructed". After each entry:
///   recall    = relevant text retrieved / total size of the relevant elements
///   precision = relevant text retrieved / text consumed
/// Every entry consumes its full size. In mode S a relevant entry adds its
/// full size as relevant text; in mode O it adds only the part not already
/// covered by earlier entries. Missing sizes count as zero and are reported.
/// Throws InvalidArgument when the relevant elements have total size zero.
double inex_eval_ng(const RunResult& run, const QuantizedJudgment& judgment, const ElementSizes& sizes,
                    OverlapMode mode, std::vector<Diagnostic>* diagnostics = nullptr);

enum class Metric { InexEval, NgS, NgO };

std::string_view to_string(Metric metric);
/// Accepts "inex-eval", "ng-s", "ng-o".
Metric parse_metric(std::string_view text);

enum class CategoryFilter { All, Broad, Narrow };

std::string_view to_string(CategoryFilter filter);
CategoryFilter parse_category_filter(std::string_view text);

struct EvalOptions {
    RelevanceCase relevance_case = RelevanceCase::Original;
    CategoryFilter category = CategoryFilter::All;
    Metric metric = Metric::InexEval;
};

struct TopicScore {
    TopicId topic_id = 0;
    double average_precision = 0.0;
};

struct MetricResult {
    std::vector<TopicScore> per_topic;  // ascending topic id
    double mean_average_precision = 0.0;
    std::vector<Diagnostic> diagnostics;
};

/// Scores every topic present in both the runs and the assessments that
/// passes the category filter and has a non-empty recall base. `sizes` is
/// required for the ng metrics.
MetricResult evaluate(const std::map<TopicId, RunResult>& runs, const std::vector<AssessmentSet>& assessments,
                      const EvalOptions& options, const ElementSizes* sizes = nullptr);

}  // namespace xmlir
