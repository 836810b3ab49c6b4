#include "xmlir/element_path.hpp"

#include "xmlir/error.hpp"

#include <algorithm>
#include <charconv>

namespace xmlir {

ElementPath::ElementPath(std::vector<PathStep> steps) : steps_(std::move(steps)) {
    for (const auto& step : steps_) {
        if (step.tag.empty() || step.index == 0) {
            throw InvalidArgument("element path step needs a tag and a positive index");
        }
    }
}

ElementPath ElementPath::parse(std::string_view text) {
    auto fail = [&](const char* what) {
        return ParseError("bad element path '" + std::string(text) + "': " + what);
    };
    if (text.empty() || text.front() != '/') {
        throw fail("must start with '/'");
    }
    std::vector<PathStep> steps;
    std::size_t pos = 1;
    while (pos <= text.size()) {
        auto end = text.find('/', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view step = text.substr(pos, end - pos);
        if (step.empty()) {
            throw fail("empty step");
        }
        PathStep parsed;
        auto bracket = step.find('[');
        if (bracket == std::string_view::npos) {
            parsed.tag = std::string(step);
        } else {
            if (step.back() != ']' || bracket == 0) {
                throw fail("unterminated index");
            }
            parsed.tag = std::string(step.substr(0, bracket));
            auto digits = step.substr(bracket + 1, step.size() - bracket - 2);
            auto [ptr, ec] =
                std::from_chars(digits.data(), digits.data() + digits.size(), parsed.index);
            if (ec != std::errc{} || ptr != digits.data() + digits.size() || parsed.index == 0) {
                throw fail("index must be a positive integer");
            }
        }
        if (parsed.tag.find_first_of("[]") != std::string::npos) {
            throw fail("stray bracket");
        }
        steps.push_back(std::move(parsed));
        pos = end + 1;
    }
    return ElementPath(std::move(steps));
}

std::string ElementPath::str() const {
    std::string out;
    for (const auto& step : steps_) {
        out += '/';
        out += step.tag;
        out += '[';
        out += std::to_string(step.index);
        out += ']';
    }
    return out;
}

ElementPath ElementPath::child(std::string tag, std::uint32_t index) const {
    auto steps = steps_;
    steps.push_back(PathStep{std::move(tag), index});
    return ElementPath(std::move(steps));
}

ElementPath ElementPath::parent() const {
    if (steps_.empty()) {
        throw InvalidArgument("empty path has no parent");
    }
    return prefix(steps_.size() - 1);
}

ElementPath ElementPath::prefix(std::size_t depth) const {
    ElementPath out;
    out.steps_.assign(steps_.begin(),
                      steps_.begin() + static_cast<std::ptrdiff_t>(std::min(depth, steps_.size())));
    return out;
}

bool ElementPath::is_ancestor_of(const ElementPath& other) const noexcept {
    return steps_.size() < other.steps_.size() &&
           std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

bool ElementPath::is_ancestor_or_self_of(const ElementPath& other) const noexcept {
    return steps_.size() <= other.steps_.size() &&
           std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

SequenceKey ElementPath::sequence() const {
    SequenceKey key;
    key.reserve(steps_.size());
    for (const auto& step : steps_) {
        key.push_back(step.index);
    }
    return key;
}

std::size_t ElementPathHash::operator()(const ElementPath& path) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& step : path.steps()) {
        h ^= std::hash<std::string>{}(step.tag) + 0x9e3779b9 + (h << 6) + (h >> 2);
        h ^= std::hash<std::uint32_t>{}(step.index) + 0x9e3779b9 + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace xmlir
