#include "xmlir/eval.hpp"

#include <algorithm>
#include <numeric>

namespace xmlir {

namespace {

bool reaches_level(const CurvePoint& p, std::size_t level) {
    // recall >= level/100, tolerant to rounding of real-valued sizes; exact
    // for integer counts.
    return p.recall_num * 100.0 >= static_cast<double>(level) * p.recall_den * (1.0 - 1e-12);
}

}  // namespace

QuantizedJudgment quantize_strict(const AssessmentSet& set, RelevanceCase relevance_case) {
    return QuantizedJudgment{set.topic_id, derive_view(set, relevance_case)};
}

std::array<double, kRecallLevels> interpolated_precision(std::span<const CurvePoint> curve) {
    std::array<double, kRecallLevels> out{};
    // Recall never decreases along a run, so a suffix maximum of precision
    // answers every level with one forward pointer.
    std::vector<double> best_after(curve.size() + 1, 0.0);
    for (std::size_t i = curve.size(); i-- > 0;) {
        best_after[i] = std::max(best_after[i + 1], curve[i].precision);
    }
    std::size_t first = 0;
    for (std::size_t level = 1; level <= kRecallLevels; ++level) {
        while (first < curve.size() && !reaches_level(curve[first], level)) {
            ++first;
        }
        out[level - 1] = best_after[first];
    }
    return out;
}

double average_precision(std::span<const CurvePoint> curve) {
    auto levels = interpolated_precision(curve);
    return std::accumulate(levels.begin(), levels.end(), 0.0) / static_cast<double>(kRecallLevels);
}

double inex_eval_strict(const RunResult& run, const QuantizedJudgment& judgment) {
    if (judgment.relevant.empty()) {
        throw InvalidArgument("topic " + std::to_string(judgment.topic_id) + " has an empty recall base");
    }
    const auto base = static_cast<double>(judgment.relevant.size());
    ElementSet found;
    std::vector<CurvePoint> curve;
    curve.reserve(run.entries.size());
    for (std::size_t k = 0; k < run.entries.size(); ++k) {
        const auto& entry = run.entries[k];
        ElementRef ref{entry.doc, entry.path};
        if (judgment.relevant.contains(ref)) {
            found.insert(std::move(ref));
        }
        auto hits = static_cast<double>(found.size());
        curve.push_back(CurvePoint{hits, base, hits / static_cast<double>(k + 1)});
    }
    return average_precision(curve);
}

std::optional<std::size_t> ElementSizes::size(const ElementRef& ref) const {
    if (auto it = overrides_.find(ref); it != overrides_.end()) {
        return it->second;
    }
    if (corpus_ == nullptr) {
        return std::nullopt;
    }
    auto ordinal = corpus_->find(ref.doc);
    if (!ordinal) {
        return std::nullopt;
    }
    const auto& tree = corpus_->doc(*ordinal);
    auto node = tree.resolve(ref.path);
    if (!node) {
        return std::nullopt;
    }
    return tree.node(*node).subtree_size;
}

double inex_eval_ng(const RunResult& run, const QuantizedJudgment& judgment, const ElementSizes& sizes,
                    OverlapMode mode, std::vector<Diagnostic>* diagnostics) {
    const auto source = "topic " + std::to_string(judgment.topic_id);
    auto size_of = [&](const ElementRef& ref) -> double {
        if (auto s = sizes.size(ref)) {
            return static_cast<double>(*s);
        }
        if (diagnostics != nullptr) {
            diagnostics->push_back({source, "no size for " + ref.doc.value + " " + ref.path.str() + ", using 0"});
        }
        return 0.0;
    };

    double total_relevant = 0.0;
    for (const auto& ref : judgment.relevant) {
        total_relevant += size_of(ref);
    }
    if (total_relevant <= 0.0) {
        throw InvalidArgument(source + " has no relevant text to recall");
    }

    // Per document: maximal elements already delivered, with their sizes.
    std::map<DocId, std::vector<std::pair<ElementPath, double>>> covered;
    auto uncovered_part = [&](const ElementRef& ref, double full) {
        auto& blocks = covered[ref.doc];
        double inside = 0.0;
        for (const auto& [path, size] : blocks) {
            if (path.is_ancestor_or_self_of(ref.path)) {
                return 0.0;
            }
            if (ref.path.is_ancestor_of(path)) {
                inside += size;
            }
        }
        std::erase_if(blocks, [&](const auto& block) { return ref.path.is_ancestor_of(block.first); });
        blocks.emplace_back(ref.path, full);
        return std::max(0.0, full - inside);
    };

    ElementSet credited;
    double relevant_seen = 0.0;
    double consumed = 0.0;
    std::vector<CurvePoint> curve;
    curve.reserve(run.entries.size());
    for (const auto& entry : run.entries) {
        ElementRef ref{entry.doc, entry.path};
        double full = size_of(ref);
        double fresh = mode == OverlapMode::O ? uncovered_part(ref, full) : full;
        consumed += full;
        if (judgment.relevant.contains(ref) && credited.insert(ref).second) {
            relevant_seen += fresh;
        }
        curve.push_back(CurvePoint{relevant_seen, total_relevant, consumed > 0.0 ? relevant_seen / consumed : 0.0});
    }
    return average_precision(curve);
}

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::InexEval: return "inex-eval";
        case Metric::NgS: return "ng-s";
        case Metric::NgO: return "ng-o";
    }
    return "unknown";
}

Metric parse_metric(std::string_view text) {
    if (text == "inex-eval") {
        return Metric::InexEval;
    }
    if (text == "ng-s") {
        return Metric::NgS;
    }
    if (text == "ng-o") {
        return Metric::NgO;
    }
    throw InvalidArgument("unknown metric '" + std::string(text) + "'");
}

std::string_view to_string(CategoryFilter filter) {
    switch (filter) {
        case CategoryFilter::All: return "all";
        case CategoryFilter::Broad: return "broad";
        case CategoryFilter::Narrow: return "narrow";
    }
    return "unknown";
}

CategoryFilter parse_category_filter(std::string_view text) {
    if (text == "all") {
        return CategoryFilter::All;
    }
    if (text == "broad") {
        return CategoryFilter::Broad;
    }
    if (text == "narrow") {
        return CategoryFilter::Narrow;
    }
    throw InvalidArgument("unknown topic category '" + std::string(text) + "'");
}

MetricResult evaluate(const std::map<TopicId, RunResult>& runs, const std::vector<AssessmentSet>& assessments,
                      const EvalOptions& options, const ElementSizes* sizes) {
    if (options.metric != Metric::InexEval && sizes == nullptr) {
        throw InvalidArgument("the ng metrics need element sizes");
    }
    MetricResult result;
    std::map<TopicId, const AssessmentSet*> judged;
    for (const auto& set : assessments) {
        judged[set.topic_id] = &set;
    }
    for (const auto& [topic, run] : runs) {
        if (!judged.contains(topic)) {
            result.diagnostics.push_back({"topic " + std::to_string(topic), "run has no assessments; not scored"});
        }
    }

    for (const auto& [topic, set] : judged) {
        const auto source = "topic " + std::to_string(topic);
        auto run_it = runs.find(topic);
        if (run_it == runs.end()) {
            result.diagnostics.push_back({source, "assessed but absent from the run; not scored"});
            continue;
        }
        if (options.category != CategoryFilter::All) {
            std::optional<TopicCategory> category;
            try {
                category = categorize_topic(*set);
            } catch (const InvalidArgument&) {
            }
            auto wanted = options.category == CategoryFilter::Broad ? TopicCategory::Broad : TopicCategory::Narrow;
            if (category != wanted) {
                continue;
            }
        }
        auto judgment = quantize_strict(*set, options.relevance_case);
        try {
            double ap = 0.0;
            switch (options.metric) {
                case Metric::InexEval: ap = inex_eval_strict(run_it->second, judgment); break;
                case Metric::NgS:
                    ap = inex_eval_ng(run_it->second, judgment, *sizes, OverlapMode::S, &result.diagnostics);
                    break;
                case Metric::NgO:
                    ap = inex_eval_ng(run_it->second, judgment, *sizes, OverlapMode::O, &result.diagnostics);
                    break;
            }
            result.per_topic.push_back(TopicScore{topic, ap});
        } catch (const InvalidArgument& e) {
            result.diagnostics.push_back({source, std::string(e.what()) + "; excluded"});
        }
    }
    if (!result.per_topic.empty()) {
        double total = 0.0;
        for (const auto& score : result.per_topic) {
            total += score.average_precision;
        }
        result.mean_average_precision = total / static_cast<double>(result.per_topic.size());
    }
    return result;
}

}  // namespace xmlir
