#include "cli.hpp"

#include "xmlir/article_ranker.hpp"
#include "xmlir/assessments.hpp"
#include "xmlir/corpus.hpp"
#include "xmlir/cre.hpp"
#include "xmlir/eval.hpp"
#include "xmlir/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace xmlir::cli {

namespace fs = std::filesystem;

namespace {

class FatalError : public Error {
  public:
    using Error::Error;
};

void report(std::ostream& err, const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        err << "warning: " << d.source << ": " << d.message << '\n';
    }
}

std::string require(const std::string& value, const char* flag) {
    if (value.empty()) {
        throw FatalError(std::string(flag) + " is required");
    }
    return value;
}

template <typename T>
const T& single(const std::vector<T>& values, const char* flag) {
    if (values.size() != 1) {
        throw FatalError(std::string(flag) + " takes exactly one value for this command");
    }
    return values.front();
}

std::ofstream open_output(const std::string& path) {
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) {
        fs::create_directories(parent);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FatalError("cannot write " + path);
    }
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.close();
    if (!out) {
        throw FatalError("failed writing " + path);
    }
}

std::string fixed(double value, int digits = 4) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << value;
    return s.str();
}

Corpus load_corpus(const ExperimentConfig& config, std::ostream& err) {
    auto corpus = ingest_corpus(require(config.corpus_dir, "--corpus"));
    report(err, corpus.diagnostics());
    return corpus;
}

// ---------------------------------------------------------------- index

void cmd_index(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    auto corpus = load_corpus(config, err);
    if (corpus.empty()) {
        throw FatalError("corpus " + config.corpus_dir + " contains no parseable documents");
    }
    auto index = build_index(corpus);
    fs::path dir = require(config.out, "--out");
    fs::create_directories(dir);

    auto index_path = (dir / "index.txt").string();
    auto index_file = open_output(index_path);
    index.save(index_file);
    finish(index_file, index_path);

    auto manifest_path = (dir / "manifest.tsv").string();
    auto manifest = open_output(manifest_path);
    manifest << "ordinal\tdoc_id\ttokens\telements\n";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& tree = corpus.doc(static_cast<DocOrdinal>(i));
        manifest << i << '\t' << tree.doc().value << '\t' << tree.token_count() << '\t' << tree.node_count() << '\n';
    }
    finish(manifest, manifest_path);
    out << "indexed " << corpus.size() << " documents, " << index.all_postings().size() << " terms into "
        << dir.string() << '\n';
}

// ---------------------------------------------------------------- run

InvertedIndex obtain_index(const ExperimentConfig& config, const Corpus& corpus) {
    if (config.index_dir.empty()) {
        return build_index(corpus);
    }
    auto path = (fs::path(config.index_dir) / "index.txt").string();
    std::ifstream in(path);
    if (!in) {
        throw FatalError("cannot open index " + path);
    }
    auto index = InvertedIndex::load(in);
    if (index.doc_count() != corpus.size()) {
        throw FatalError("index " + path + " does not match the corpus (document count differs)");
    }
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (index.doc_ids()[i] != corpus.doc(static_cast<DocOrdinal>(i)).doc()) {
            throw FatalError("index " + path + " does not match the corpus at document " + std::to_string(i));
        }
    }
    return index;
}

std::vector<SystemConfig> run_cells(const ExperimentConfig& config) {
    std::vector<SystemConfig> cells;
    for (const auto& name : config.systems) {
        SystemConfig base;
        base.system = parse_system(name);
        base.slope = config.slope;
        base.max_results = config.max_results;
        if (base.system == System::FullText) {
            cells.push_back(base);
            continue;
        }
        base.cre_enabled = config.cre;
        for (const auto& n : config.n_values) {
            base.n_per_article = parse_limit(n);
            if (!config.cre) {
                cells.push_back(base);
                continue;
            }
            for (const auto& combo : config.combos) {
                base.combo = HeuristicCombo::parse(combo);
                cells.push_back(base);
            }
        }
    }
    // A repeated value on the command line would otherwise write one file twice.
    std::vector<SystemConfig> unique;
    for (auto& cell : cells) {
        if (std::none_of(unique.begin(), unique.end(), [&](const auto& u) { return u.tag() == cell.tag(); })) {
            unique.push_back(std::move(cell));
        }
    }
    return unique;
}

void cmd_run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    auto corpus = load_corpus(config, err);
    if (corpus.empty()) {
        throw FatalError("corpus " + config.corpus_dir + " contains no parseable documents");
    }
    auto topic_file = load_topics(require(config.topics_file, "--topics"));
    report(err, topic_file.diagnostics);
    auto index = obtain_index(config, corpus);
    auto cells = run_cells(config);
    auto target = require(config.out, "--out");
    RetrievalContext ctx{corpus, index};

    for (const auto& cell : cells) {
        const auto& topics = topic_file.topics;
        std::vector<std::future<std::optional<RunResult>>> jobs;
        std::vector<std::string> failures(topics.size());
        for (std::size_t i = 0; i < topics.size(); ++i) {
            jobs.push_back(std::async(std::launch::async, [&, i]() -> std::optional<RunResult> {
                try {
                    return run_system(ctx, topics[i], cell);
                } catch (const InvalidArgument& e) {
                    failures[i] = e.what();
                    return std::nullopt;
                }
            }));
        }
        auto path = cells.size() == 1 ? target : (fs::path(target) / (cell.tag() + ".run")).string();
        auto file = open_output(path);
        std::size_t written = 0;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            auto result = jobs[i].get();
            if (!result) {
                err << "warning: topic " << topics[i].id << ": " << failures[i] << "; skipped\n";
                continue;
            }
            write_run(file, *result, cell.tag());
            ++written;
        }
        finish(file, path);
        out << cell.tag() << ": " << written << " topics -> " << path << '\n';
    }
}

// ---------------------------------------------------------------- eval

RunFile load_run(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FatalError("cannot open run file " + path);
    }
    return read_run(in);
}

struct EvalInputs {
    AssessmentFile assessments;
    std::optional<Corpus> corpus;
    std::optional<ElementSizes> sizes;
};

EvalInputs load_eval_inputs(const ExperimentConfig& config, bool need_sizes, std::ostream& err) {
    EvalInputs inputs;
    inputs.assessments = load_assessments(require(config.assessments_dir, "--assessments"));
    report(err, inputs.assessments.diagnostics);
    if (need_sizes && config.corpus_dir.empty()) {
        throw FatalError("the ng metrics need --corpus for element sizes");
    }
    if (!config.corpus_dir.empty()) {
        inputs.corpus.emplace(load_corpus(config, err));
        inputs.sizes.emplace(*inputs.corpus);
    }
    return inputs;
}

std::string metric_label(Metric metric) {
    std::string label(to_string(metric));
    return metric == Metric::InexEval ? label : label + " (ng-reconstructed)";
}

void cmd_eval(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    auto run_path = single(config.run_files, "--run");
    EvalOptions options{parse_relevance_case(single(config.cases, "--case")),
                        parse_category_filter(single(config.categories, "--category")),
                        parse_metric(single(config.metrics, "--metric"))};
    auto run_file = load_run(run_path);
    auto inputs = load_eval_inputs(config, options.metric != Metric::InexEval, err);
    auto result = evaluate(run_file.runs, inputs.assessments.sets, options, inputs.sizes ? &*inputs.sizes : nullptr);
    report(err, result.diagnostics);

    auto path = require(config.out, "--out");
    auto file = open_output(path);
    file << "# run\t" << run_file.system_tag << "\tmetric\t" << metric_label(options.metric) << "\tcase\t"
         << to_string(options.relevance_case) << "\tcategory\t" << to_string(options.category) << '\n';
    file << "topic\tAP\n";
    for (const auto& score : result.per_topic) {
        file << score.topic_id << '\t' << fixed(score.average_precision, 6) << '\n';
    }
    file << "MAP\t" << fixed(result.mean_average_precision, 6) << '\n';
    finish(file, path);
    out << run_file.system_tag << ": MAP " << fixed(result.mean_average_precision, 4) << " over "
        << result.per_topic.size() << " topics -> " << path << '\n';
}

// ---------------------------------------------------------------- report

std::pair<std::string, std::string> split_tag(const std::string& tag) {
    auto pos = tag.rfind("-n");
    if (pos == std::string::npos || pos + 2 >= tag.size()) {
        return {tag, "-"};
    }
    return {tag.substr(0, pos), tag.substr(pos + 2)};
}

void cmd_report(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    if (config.run_files.empty()) {
        throw FatalError("--run is required");
    }
    std::vector<Metric> metrics;
    for (const auto& m : config.metrics) {
        metrics.push_back(parse_metric(m));
    }
    bool need_sizes = std::any_of(metrics.begin(), metrics.end(), [](Metric m) { return m != Metric::InexEval; });
    auto inputs = load_eval_inputs(config, need_sizes, err);
    std::vector<RunFile> runs;
    for (const auto& path : config.run_files) {
        runs.push_back(load_run(path));
    }

    auto path = require(config.out, "--out");
    auto file = open_output(path);
    for (Metric metric : metrics) {
        for (const auto& case_name : config.cases) {
            auto relevance_case = parse_relevance_case(case_name);
            file << "# metric\t" << metric_label(metric) << "\tcase\t" << to_string(relevance_case) << '\n';
            file << "system\tn";
            for (const auto& category : config.categories) {
                file << '\t' << to_string(parse_category_filter(category));
            }
            file << '\n';
            for (const auto& run : runs) {
                auto [system, n] = split_tag(run.system_tag);
                file << system << '\t' << n;
                for (const auto& category : config.categories) {
                    EvalOptions options{relevance_case, parse_category_filter(category), metric};
                    auto result =
                        evaluate(run.runs, inputs.assessments.sets, options, inputs.sizes ? &*inputs.sizes : nullptr);
                    file << '\t' << fixed(result.mean_average_precision);
                }
                file << '\n';
            }
            file << '\n';
        }
    }
    finish(file, path);
    out << "report for " << runs.size() << " runs -> " << path << '\n';
}

// ---------------------------------------------------------------- assess-stats

void cmd_assess_stats(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    auto assessments = load_assessments(require(config.assessments_dir, "--assessments"));
    report(err, assessments.diagnostics);
    if (!config.corpus_dir.empty()) {
        auto corpus = load_corpus(config, err);
        for (const auto& set : assessments.sets) {
            report(err, unresolved_assessments(set, corpus));
        }
    }

    std::vector<AssessmentSet> usable;
    for (const auto& set : assessments.sets) {
        if (highly_relevant(set).empty()) {
            err << "warning: topic " << set.topic_id << ": no highly relevant elements; excluded\n";
        } else {
            usable.push_back(set);
        }
    }

    const std::array cases{RelevanceCase::Original, RelevanceCase::General, RelevanceCase::Specific};
    std::map<std::string, std::array<std::size_t, 3>> table;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        for (const auto& [tag, count] : element_distribution(usable, cases[c])) {
            table[tag][c] = count;
        }
    }
    std::vector<std::pair<std::string, std::array<std::size_t, 3>>> rows(table.begin(), table.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second[0] > b.second[0]; });

    auto path = require(config.out, "--out");
    auto file = open_output(path);
    file << "# highly relevant elements by tag (" << usable.size() << " topics)\n";
    file << "tag\toriginal\tgeneral\tspecific\n";
    for (const auto& [tag, counts] : rows) {
        file << tag << '\t' << counts[0] << '\t' << counts[1] << '\t' << counts[2] << '\n';
    }
    file << "\n# topic categories from general elements\n";
    file << "topic\tarticle_elements\tother_elements\tcategory\n";
    std::map<TopicCategory, std::size_t> totals;
    for (const auto& set : usable) {
        auto counts = category_counts(set);
        auto category = categorize(counts);
        ++totals[category];
        file << set.topic_id << '\t' << counts.root_elements << '\t' << counts.other_elements << '\t'
             << to_string(category) << '\n';
    }
    finish(file, path);
    out << usable.size() << " topics: " << totals[TopicCategory::Broad] << " broad, " << totals[TopicCategory::Narrow]
        << " narrow, " << totals[TopicCategory::Neutral] << " neutral -> " << path << '\n';
}

std::vector<std::string> combo_names() {
    std::vector<std::string> names;
    for (const auto& combo : HeuristicCombo::all()) {
        names.push_back(combo.str());
    }
    return names;
}

}  // namespace

std::unique_ptr<CLI::App> build_app(ExperimentConfig& config) {
    auto app = std::make_unique<CLI::App>("Hybrid XML element retrieval and evaluation driver", "xmlir");
    app->fallthrough();
    app->require_subcommand(1);

    const char* env_config = std::getenv("XMLIR_CONFIG");
    app->set_config("--config", env_config != nullptr ? env_config : "",
                    "Config file with default option values (env: XMLIR_CONFIG)");

    app->add_option("--corpus", config.corpus_dir, "Directory of XML documents");
    app->add_option("--topics", config.topics_file, "INEX CO topics file");
    app->add_option("--assessments", config.assessments_dir, "Directory of assessment files");
    app->add_option("--index", config.index_dir, "Directory written by 'index' (built in memory if omitted)");
    app->add_option("--run", config.run_files, "Run file(s) to evaluate");
    app->add_option("--system", config.systems, "fulltext | xmldb | hybrid")
        ->delimiter(',')
        ->check(CLI::IsMember({"fulltext", "xmldb", "hybrid"}))
        ->capture_default_str();
    app->add_flag("--cre", config.cre, "Rank coherent retrieval elements instead of matching elements");
    app->add_option("--combo", config.combos, "CRE heuristic combination, e.g. MpE or PME")
        ->delimiter(',')
        ->check(CLI::IsMember(combo_names()))
        ->capture_default_str();
    app->add_option("--n", config.n_values, "Elements kept per article: 1 | 10 | all")
        ->delimiter(',')
        ->check(CLI::IsMember({"1", "10", "all"}))
        ->capture_default_str();
    app->add_option("--slope", config.slope, "Pivoted normalization slope")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app->add_option("--max-results", config.max_results, "Answer list cap per topic")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--case", config.cases, "original | general | specific")
        ->delimiter(',')
        ->check(CLI::IsMember({"original", "general", "specific"}))
        ->capture_default_str();
    app->add_option("--category", config.categories, "all | broad | narrow")
        ->delimiter(',')
        ->check(CLI::IsMember({"all", "broad", "narrow"}))
        ->capture_default_str();
    app->add_option("--metric", config.metrics, "inex-eval | ng-s | ng-o")
        ->delimiter(',')
        ->check(CLI::IsMember({"inex-eval", "ng-s", "ng-o"}))
        ->capture_default_str();
    app->add_option("--out", config.out, "Output file or directory");

    app->add_subcommand("index", "Build and persist the article index plus a corpus manifest");
    app->add_subcommand("run", "Execute retrieval systems over a topics file and write run files");
    app->add_subcommand("eval", "Score one run file: per-topic AP and MAP");
    app->add_subcommand("report", "MAP grid over run files x relevance cases x topic categories");
    app->add_subcommand("assess-stats", "Element distributions and Broad/Narrow topic categories");
    return app;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    ExperimentConfig config;
    auto app = build_app(config);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app->parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app->exit(e, out, err);
    }

    try {
        const auto* sub = app->get_subcommands().front();
        const auto& name = sub->get_name();
        if (name == "index") {
            cmd_index(config, out, err);
        } else if (name == "run") {
            cmd_run(config, out, err);
        } else if (name == "eval") {
            cmd_eval(config, out, err);
        } else if (name == "report") {
            cmd_report(config, out, err);
        } else {
            cmd_assess_stats(config, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace xmlir::cli
