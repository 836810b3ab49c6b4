#include "xmlir/corpus.hpp"

#include "xml_sax.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace xmlir {

namespace {

bool is_token_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !is_token_char(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        std::size_t start = i;
        while (i < text.size() && is_token_char(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (i > start && i - start >= config.min_length) {
            std::string token(text.substr(start, i - start));
            if (config.lowercase) {
                for (auto& c : token) {
                    if (c >= 'A' && c <= 'Z') {
                        c = static_cast<char>(c - 'A' + 'a');
                    }
                }
            }
            tokens.push_back(std::move(token));
        }
    }
    return tokens;
}

// Assembles the pre-order node array from SAX events. Character data is
// buffered until the next tag so words split across expat callbacks stay whole.
class TreeBuilder {
  public:
    TreeBuilder(DocumentTree& tree, const TokenizerConfig& config) : tree_(tree), config_(config) {}

    void start(std::string_view name) {
        flush_text();
        auto& nodes = tree_.nodes_;
        if (stack_.empty() && !nodes.empty()) {
            throw ParseError("multiple root elements");
        }
        ElementNode node;
        node.tag = std::string(name);
        if (!stack_.empty()) {
            NodeId parent = stack_.back();
            node.parent = parent;
            std::uint32_t same_tag = 0;
            for (NodeId sibling : nodes[parent].children) {
                if (nodes[sibling].tag == node.tag) {
                    ++same_tag;
                }
            }
            node.sibling_index = same_tag + 1;
        }
        auto id = static_cast<NodeId>(nodes.size());
        if (!stack_.empty()) {
            nodes[stack_.back()].children.push_back(id);
        }
        nodes.push_back(std::move(node));
        stack_.push_back(id);
    }

    void end() {
        flush_text();
        auto& nodes = tree_.nodes_;
        NodeId id = stack_.back();
        stack_.pop_back();
        auto& node = nodes[id];
        node.subtree_end = static_cast<NodeId>(nodes.size());
        node.subtree_size = node.tokens.size();
        for (NodeId child : node.children) {
            node.subtree_size += nodes[child].subtree_size;
        }
    }

    void text(std::string_view chunk) {
        if (!stack_.empty()) {
            pending_.append(chunk);
        }
    }

  private:
    void flush_text() {
        if (pending_.empty() || stack_.empty()) {
            pending_.clear();
            return;
        }
        auto tokens = tokenize(pending_, config_);
        auto& own = tree_.nodes_[stack_.back()].tokens;
        own.insert(own.end(), std::make_move_iterator(tokens.begin()),
                   std::make_move_iterator(tokens.end()));
        pending_.clear();
    }

    DocumentTree& tree_;
    const TokenizerConfig& config_;
    std::vector<NodeId> stack_;
    std::string pending_;
};

DocumentTree DocumentTree::parse(DocId doc, std::string_view xml, const TokenizerConfig& config) {
    if (doc.value.empty()) {
        throw InvalidArgument("document id must not be empty");
    }
    DocumentTree tree;
    tree.doc_ = std::move(doc);
    TreeBuilder builder(tree, config);
    detail::SaxHandler handler;
    handler.on_start = [&](std::string_view name, const detail::XmlAttributes&) { builder.start(name); };
    handler.on_end = [&](std::string_view) { builder.end(); };
    handler.on_text = [&](std::string_view text) { builder.text(text); };
    detail::parse_xml(xml, handler);
    if (tree.nodes_.empty()) {
        throw ParseError("document has no root element");
    }
    return tree;
}

std::optional<NodeId> DocumentTree::resolve(const ElementPath& path) const {
    if (path.empty() || nodes_.empty()) {
        return std::nullopt;
    }
    const auto& steps = path.steps();
    if (steps[0].tag != nodes_[0].tag || steps[0].index != 1) {
        return std::nullopt;
    }
    NodeId current = 0;
    for (std::size_t i = 1; i < steps.size(); ++i) {
        NodeId next = kNoNode;
        for (NodeId child : nodes_[current].children) {
            const auto& node = nodes_[child];
            if (node.tag == steps[i].tag && node.sibling_index == steps[i].index) {
                next = child;
                break;
            }
        }
        if (next == kNoNode) {
            return std::nullopt;
        }
        current = next;
    }
    return current;
}

ElementPath DocumentTree::path_of(NodeId id) const {
    std::vector<PathStep> steps;
    for (NodeId cur = id; cur != kNoNode; cur = nodes_.at(cur).parent) {
        steps.push_back(PathStep{nodes_[cur].tag, nodes_[cur].sibling_index});
    }
    std::reverse(steps.begin(), steps.end());
    return ElementPath(std::move(steps));
}

bool DocumentTree::is_ancestor(NodeId ancestor, NodeId descendant) const noexcept {
    return ancestor < descendant && ancestor < nodes_.size() &&
           descendant < nodes_[ancestor].subtree_end;
}

TermCounts DocumentTree::subtree_terms(NodeId id) const {
    const auto& top = nodes_.at(id);
    TermCounts counts;
    for (NodeId cur = id; cur < top.subtree_end; ++cur) {
        for (const auto& token : nodes_[cur].tokens) {
            ++counts[token];
        }
    }
    return counts;
}

std::optional<NodeId> resolve_path(const DocumentTree& tree, const ElementPath& path) {
    return tree.resolve(path);
}

TermCounts subtree_terms(const DocumentTree& tree, const ElementPath& path) {
    auto id = tree.resolve(path);
    if (!id) {
        throw InvalidArgument("path " + path.str() + " does not resolve in " + tree.doc().value);
    }
    return tree.subtree_terms(*id);
}

Corpus::Corpus(std::vector<DocumentTree> docs, std::vector<Diagnostic> diagnostics)
    : docs_(std::move(docs)), diagnostics_(std::move(diagnostics)) {
    for (std::size_t i = 0; i < docs_.size(); ++i) {
        auto [it, inserted] = by_id_.emplace(docs_[i].doc().value, static_cast<DocOrdinal>(i));
        if (!inserted) {
            throw InvalidArgument("duplicate document id " + docs_[i].doc().value);
        }
    }
}

std::optional<DocOrdinal> Corpus::find(const DocId& id) const {
    auto it = by_id_.find(id.value);
    if (it == by_id_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Corpus ingest_corpus(const std::filesystem::path& root, const TokenizerConfig& config) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw Error("corpus directory " + root.string() + " is not a readable directory");
    }
    std::vector<fs::path> files;
    fs::recursive_directory_iterator it(root, ec), end;
    if (ec) {
        throw Error("cannot read corpus directory " + root.string() + ": " + ec.message());
    }
    for (; it != end; it.increment(ec)) {
        if (ec) {
            throw Error("cannot read corpus directory " + root.string() + ": " + ec.message());
        }
        if (it->is_regular_file() && it->path().extension() == ".xml") {
            files.push_back(fs::relative(it->path(), root));
        }
    }
    std::sort(files.begin(), files.end());

    struct Parsed {
        std::optional<DocumentTree> tree;
        std::string error;
    };
    auto parse_one = [&](const fs::path& rel) -> Parsed {
        auto id = rel;
        id.replace_extension();
        try {
            auto text = detail::read_file((root / rel).string());
            return {DocumentTree::parse(DocId{id.generic_string()}, text, config), {}};
        } catch (const Error& e) {
            return {std::nullopt, e.what()};
        }
    };

    std::vector<Parsed> parsed(files.size());
    std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
    workers = std::min(workers, std::max<std::size_t>(files.size() / 16, 1));
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < files.size(); i += workers) {
                parsed[i] = parse_one(files[i]);
            }
        }));
    }
    for (auto& job : jobs) {
        job.get();
    }

    std::vector<DocumentTree> docs;
    std::vector<Diagnostic> diagnostics;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (parsed[i].tree) {
            docs.push_back(std::move(*parsed[i].tree));
        } else {
            diagnostics.push_back({files[i].generic_string(), parsed[i].error});
        }
    }
    return Corpus(std::move(docs), std::move(diagnostics));
}

}  // namespace xmlir
