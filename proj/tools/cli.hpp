#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace xmlir::cli {

/// Every option of the driver. Options live on the top-level command so a
/// single flat config file (TOML/INI, named by --config or XMLIR_CONFIG)
/// can supply any of them; the command line wins over the file.
struct ExperimentConfig {
    std::string corpus_dir;
    std::string topics_file;
    std::string assessments_dir;
    std::string index_dir;
    std::vector<std::string> run_files;
    std::vector<std::string> systems{"hybrid"};
    bool cre = false;
    std::vector<std::string> combos{"MpE"};
    std::vector<std::string> n_values{"all"};
    double slope = 0.55;
    std::size_t max_results = 1500;
    std::vector<std::string> cases{"original"};
    std::vector<std::string> categories{"all"};
    std::vector<std::string> metrics{"inex-eval"};
    std::string out;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Builds the command tree bound to `config`. Exposed for tests.
std::unique_ptr<CLI::App> build_app(ExperimentConfig& config);

/// Runs the driver on `args` (without the program name). Returns the
/// process exit code: 0 on success, 1 on a fatal error, CLI11's code on a
/// usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xmlir::cli
