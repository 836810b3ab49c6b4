#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace xmlir::testing {

std::vector<ElementPath> example_or_list() {
    const char* paths[] = {
        "/article[1]/bdy[1]/sec[2]/ip1[1]",
        "/article[1]/bdy[1]/sec[2]/ss1[1]/ip1[1]",
        "/article[1]/bdy[1]/sec[2]/ss1[1]/p[1]",
        "/article[1]/bdy[1]/sec[2]/ss1[2]/p[1]",
        "/article[1]/bdy[1]/sec[2]/ss1[3]/ip1[1]",
        "/article[1]/bdy[1]/sec[4]/ip1[1]",
        "/article[1]/bdy[1]/sec[4]/p[1]",
        "/article[1]/bdy[1]/sec[4]/p[2]",
        "/article[1]/bdy[1]/sec[4]/p[3]",
        "/article[1]/bm[1]/app[1]/sec[1]/ip1[1]",
        "/article[1]/bm[1]/app[1]/sec[2]/p[1]",
        "/article[1]/bm[1]/app[1]/sec[2]/p[2]",
    };
    std::vector<ElementPath> out;
    for (const char* p : paths) {
        out.push_back(ElementPath::parse(p));
    }
    return out;
}

std::string example_assessment_xml() {
    return R"(<?xml version="1.0"?>
<assessments topic="117">
  <file file="ic/1999/w4095">
    <path E="3" S="3" path="/article[1]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[2]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[2]/ip1[1]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[2]/ss1[1]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[2]/ss1[1]/ip1[1]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[2]/ss1[1]/p[1]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[2]/ss1[2]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[2]/ss1[2]/ip1[1]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[2]/ss1[2]/p[1]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[4]"/>
    <path E="0" S="0" path="/article[1]/bdy[1]/sec[4]/st[1]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[4]/ip1[1]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[4]/p[1]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[4]/p[2]"/>
    <path E="3" S="3" path="/article[1]/bdy[1]/sec[4]/p[3]"/>
    <path E="3" S="2" path="/article[1]/bm[1]"/>
    <path E="3" S="2" path="/article[1]/bm[1]/app[1]"/>
    <path E="3" S="2" path="/article[1]/bm[1]/app[1]/sec[1]"/>
    <path E="3" S="2" path="/article[1]/bm[1]/app[1]/sec[1]/ip1[1]"/>
  </file>
</assessments>
)";
}

std::string example_topic_xml() {
    return R"(<?xml version="1.0"?>
<inex_topic topic_id="117" query_type="CO" ct_no="98">
  <title>Patricia Tries</title>
  <description>Find documents/elements that describe Patricia tries and their use.</description>
  <narrative>To be relevant, a document/element must deal with the use of Patricia Tries for text search.</narrative>
  <keywords>Patricia tries, tries, text search, string search algorithm, string pattern matching</keywords>
</inex_topic>
)";
}

TempDir::TempDir() {
    static std::atomic<unsigned> counter{0};
    auto base = std::filesystem::temp_directory_path();
    path_ = base / ("xmlir-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::filesystem::path TempDir::write(const std::string& relative, const std::string& content) const {
    auto target = path_ / relative;
    std::filesystem::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary);
    out << content;
    return target;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

void emit(std::mt19937& rng, const RandomTreeOptions& options, std::size_t& budget, std::size_t depth,
          std::ostringstream& out) {
    std::uniform_int_distribution<std::size_t> pick_tag(0, options.tags.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_word(0, options.vocabulary.size() - 1);
    std::bernoulli_distribution has_text(options.text_probability);
    std::uniform_int_distribution<std::size_t> fanout(depth == 0 ? 1 : 0, depth < 5 ? 4 : 1);

    const auto& tag = options.tags[pick_tag(rng)];
    out << '<' << tag << '>';
    if (has_text(rng)) {
        out << options.vocabulary[pick_word(rng)] << ' ';
    }
    std::size_t children = fanout(rng);
    for (std::size_t i = 0; i < children && budget > 0; ++i) {
        --budget;
        emit(rng, options, budget, depth + 1, out);
        if (has_text(rng)) {
            out << ' ' << options.vocabulary[pick_word(rng)];
        }
    }
    out << "</" << tag << '>';
}

}  // namespace

std::string random_document_xml(std::mt19937& rng, const RandomTreeOptions& options) {
    std::uniform_int_distribution<std::size_t> size(1, options.max_nodes);
    std::size_t budget = size(rng) - 1;
    std::ostringstream out;
    emit(rng, options, budget, 0, out);
    return out.str();
}

}  // namespace xmlir::testing
