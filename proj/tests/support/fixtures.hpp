#pragma once

// Fixtures transcribed from the worked example article ic/1999/w4095 and
// shared helpers for tests.

#include "xmlir/assessments.hpp"
#include "xmlir/corpus.hpp"
#include "xmlir/element_path.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace xmlir::testing {

/// OR answer list of the worked example, in article order (12 paths).
std::vector<ElementPath> example_or_list();

/// Assessment extract of the worked example as INEX XML (topic 117).
std::string example_assessment_xml();

/// Topic 117 in INEX XML.
std::string example_topic_xml();

/// Unique directory under the system temp dir, removed on destruction.
class TempDir {
  public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
    /// Writes `content` to path()/relative, creating parent directories.
    std::filesystem::path write(const std::string& relative, const std::string& content) const;

  private:
    std::filesystem::path path_;
};

std::string read_text(const std::filesystem::path& path);

struct RandomTreeOptions {
    std::size_t max_nodes = 30;
    std::vector<std::string> tags{"a", "b", "c"};
    std::vector<std::string> vocabulary{"w0", "w1", "w2", "w3", "w4", "w5"};
    double text_probability = 0.5;
};

/// Random well-formed document with between 1 and max_nodes elements.
std::string random_document_xml(std::mt19937& rng, const RandomTreeOptions& options = {});

}  // namespace xmlir::testing
