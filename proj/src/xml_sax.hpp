#pragma once

// Thin RAII wrapper over expat used by every XML reader in the library.

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xmlir::detail {

using XmlAttributes = std::vector<std::pair<std::string, std::string>>;

struct SaxHandler {
    std::function<void(std::string_view name, const XmlAttributes& attrs)> on_start;
    std::function<void(std::string_view name)> on_end;
    std::function<void(std::string_view text)> on_text;
};

/// Streams `xml` through the handler. Throws ParseError with the line and
/// column of the first well-formedness violation. Exceptions thrown by the
/// callbacks propagate unchanged.
void parse_xml(std::string_view xml, const SaxHandler& handler);

std::string_view find_attribute(const XmlAttributes& attrs, std::string_view name);

std::string read_file(const std::string& path);

}  // namespace xmlir::detail
