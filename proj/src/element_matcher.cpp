#include "xmlir/element_matcher.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <unordered_map>

namespace xmlir {

ElementQuery::ElementQuery(std::vector<std::string> terms, MatchMode mode) : terms_(std::move(terms)), mode_(mode) {
    std::sort(terms_.begin(), terms_.end());
    terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
    terms_.erase(std::remove(terms_.begin(), terms_.end(), std::string{}), terms_.end());
    if (terms_.empty()) {
        throw InvalidArgument("element query needs at least one term");
    }
}

std::vector<MatchingElement> match_elements(const DocumentTree& tree, const ElementQuery& query,
                                            DocOrdinal ordinal) {
    const auto& terms = query.terms();
    std::unordered_map<std::string_view, std::size_t> slot;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        slot.emplace(terms[i], i);
    }

    // Bitmask of query terms present in each subtree. Children always have
    // larger ids than their parent, so one reverse sweep folds them upward.
    const auto nodes = tree.nodes();
    std::vector<boost::dynamic_bitset<>> present(nodes.size(), boost::dynamic_bitset<>(terms.size()));
    for (std::size_t id = nodes.size(); id-- > 0;) {
        for (const auto& token : nodes[id].tokens) {
            if (auto it = slot.find(token); it != slot.end()) {
                present[id].set(it->second);
            }
        }
        for (NodeId child : nodes[id].children) {
            present[id] |= present[child];
        }
    }

    auto satisfies = [&](std::size_t id) {
        return query.mode() == MatchMode::And ? present[id].all() : present[id].any();
    };

    std::vector<MatchingElement> out;
    if (nodes.empty() || !satisfies(0)) {
        return out;
    }
    for (std::size_t id = 0; id < nodes.size(); ++id) {
        if (!satisfies(id)) {
            continue;
        }
        bool child_satisfies = std::any_of(nodes[id].children.begin(), nodes[id].children.end(),
                                           [&](NodeId child) { return satisfies(child); });
        if (!child_satisfies) {
            auto node = static_cast<NodeId>(id);
            out.push_back(MatchingElement{ordinal, tree.doc(), tree.path_of(node), node});
        }
    }
    return out;
}

std::vector<MatchingElement> collection_match(const Corpus& corpus, const ElementQuery& query) {
    std::vector<MatchingElement> out;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto matches = match_elements(corpus.doc(static_cast<DocOrdinal>(i)), query, static_cast<DocOrdinal>(i));
        out.insert(out.end(), std::make_move_iterator(matches.begin()), std::make_move_iterator(matches.end()));
    }
    return out;
}

}  // namespace xmlir
