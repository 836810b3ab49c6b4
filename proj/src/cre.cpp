#include "xmlir/cre.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace xmlir {

namespace {

bool is_matches_key(char c) { return c == 'M' || c == 'm'; }
bool is_length_key(char c) { return c == 'P' || c == 'p'; }

// -1: a first, 1: b first, 0: tied on this key.
int compare_key(char key, const CreRecord& a, const CreRecord& b) {
    auto cmp = [](auto x, auto y) { return x < y ? -1 : (y < x ? 1 : 0); };
    switch (key) {
        case 'M': return -cmp(a.matches, b.matches);
        case 'm': return cmp(a.matches, b.matches);
        case 'P': return -cmp(a.length, b.length);
        case 'p': return cmp(a.length, b.length);
        default: return 0;
    }
}

}  // namespace

HeuristicCombo HeuristicCombo::parse(std::string_view code) {
    if (code.size() == 3) {
        char p = code[0];
        char s = code[1];
        char t = code[2];
        bool keys_ok = (is_matches_key(p) && is_length_key(s)) || (is_length_key(p) && is_matches_key(s));
        if (keys_ok && (t == 'B' || t == 'E')) {
            return HeuristicCombo(p, s, t);
        }
    }
    throw InvalidArgument("unknown heuristic combination '" + std::string(code) + "'");
}

std::array<HeuristicCombo, 16> HeuristicCombo::all() {
    std::array<HeuristicCombo, 16> out{
        HeuristicCombo('M', 'p', 'B'), HeuristicCombo('M', 'P', 'B'), HeuristicCombo('m', 'p', 'B'),
        HeuristicCombo('m', 'P', 'B'), HeuristicCombo('P', 'm', 'B'), HeuristicCombo('P', 'M', 'B'),
        HeuristicCombo('p', 'm', 'B'), HeuristicCombo('p', 'M', 'B'), HeuristicCombo('M', 'p', 'E'),
        HeuristicCombo('M', 'P', 'E'), HeuristicCombo('m', 'p', 'E'), HeuristicCombo('m', 'P', 'E'),
        HeuristicCombo('P', 'm', 'E'), HeuristicCombo('P', 'M', 'E'), HeuristicCombo('p', 'm', 'E'),
        HeuristicCombo('p', 'M', 'E'),
    };
    return out;
}

bool HeuristicCombo::before(const CreRecord& a, const CreRecord& b) const {
    if (int c = compare_key(primary_, a, b); c != 0) {
        return c < 0;
    }
    if (int c = compare_key(secondary_, a, b); c != 0) {
        return c < 0;
    }
    bool nearer_end = tertiary_ == 'E';
    if (a.sequence != b.sequence) {
        return nearer_end ? b.sequence < a.sequence : a.sequence < b.sequence;
    }
    if (a.first_match != b.first_match) {
        return nearer_end ? a.first_match > b.first_match : a.first_match < b.first_match;
    }
    if (a.doc != b.doc) {
        return a.doc < b.doc;
    }
    return a.path < b.path;
}

std::vector<CreRecord> identify_cres(const DocId& doc, std::span<const ElementPath> matching) {
    if (matching.empty()) {
        throw InvalidArgument("CRE identification needs at least one matching element");
    }
    const auto& root = matching.front();
    std::unordered_set<ElementPath, ElementPathHash> inputs;
    for (const auto& path : matching) {
        if (path.empty() || path.steps().front() != root.steps().front()) {
            throw InvalidArgument("matching elements of " + doc.value + " do not share one root: " + path.str());
        }
        if (!inputs.insert(path).second) {
            throw InvalidArgument("duplicate matching element " + path.str() + " in " + doc.value);
        }
    }

    if (matching.size() == 1) {
        const auto& only = matching.front();
        return {CreRecord{doc, only, 1, only.depth(), only.sequence(), 0}};
    }

    // A child branch holding any CRE also holds that CRE's matching elements,
    // so counting branches that hold a matching element reaches the same
    // fixpoint as iterating over CREs.
    struct Candidate {
        std::set<PathStep> branches;
        std::size_t matches = 0;
        std::size_t first_match = 0;
    };
    std::map<ElementPath, Candidate> candidates;
    for (std::size_t i = 0; i < matching.size(); ++i) {
        const auto& path = matching[i];
        for (std::size_t depth = 1; depth < path.depth(); ++depth) {
            auto [it, inserted] = candidates.try_emplace(path.prefix(depth));
            auto& cand = it->second;
            if (inserted) {
                cand.first_match = i;
            }
            cand.branches.insert(path.steps()[depth]);
            ++cand.matches;
        }
    }

    std::vector<CreRecord> out;
    for (auto& [path, cand] : candidates) {
        if (cand.branches.size() >= 2 && !inputs.contains(path)) {
            out.push_back(CreRecord{doc, path, cand.matches, path.depth(), path.sequence(), cand.first_match});
        }
    }
    std::sort(out.begin(), out.end(), [](const CreRecord& a, const CreRecord& b) {
        return a.first_match != b.first_match ? a.first_match < b.first_match : a.length < b.length;
    });
    return out;
}

std::vector<CreRecord> identify_cres(std::span<const MatchingElement> matching) {
    if (matching.empty()) {
        throw InvalidArgument("CRE identification needs at least one matching element");
    }
    std::vector<ElementPath> paths;
    paths.reserve(matching.size());
    for (const auto& m : matching) {
        if (m.doc != matching.front().doc) {
            throw InvalidArgument("CRE identification received elements from " + matching.front().doc.value +
                                  " and " + m.doc.value);
        }
        paths.push_back(m.path);
    }
    return identify_cres(matching.front().doc, paths);
}

std::vector<CreRecord> rank_cres(std::span<const CreRecord> cres, const HeuristicCombo& combo, ResultLimit limit) {
    std::vector<CreRecord> out(cres.begin(), cres.end());
    auto before = [&](const CreRecord& a, const CreRecord& b) { return combo.before(a, b); };
    std::sort(out.begin(), out.end(), before);
    if (limit && out.size() > *limit) {
        out.resize(*limit);
    }
    return out;
}

}  // namespace xmlir
