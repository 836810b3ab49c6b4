#include "xml_sax.hpp"

#include "xmlir/error.hpp"

#include <expat.h>

#include <exception>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

namespace xmlir::detail {

namespace {

struct ParserDeleter {
    void operator()(XML_Parser parser) const { XML_ParserFree(parser); }
};

struct Context {
    const SaxHandler* handler;
    XML_Parser parser;
    std::exception_ptr error;
};

void XMLCALL start_element(void* data, const XML_Char* name, const XML_Char** atts) {
    auto* ctx = static_cast<Context*>(data);
    if (ctx->error || !ctx->handler->on_start) {
        return;
    }
    try {
        XmlAttributes attrs;
        for (int i = 0; atts[i] != nullptr; i += 2) {
            attrs.emplace_back(atts[i], atts[i + 1]);
        }
        ctx->handler->on_start(name, attrs);
    } catch (...) {
        ctx->error = std::current_exception();
        XML_StopParser(ctx->parser, XML_FALSE);
    }
}

void XMLCALL end_element(void* data, const XML_Char* name) {
    auto* ctx = static_cast<Context*>(data);
    if (ctx->error || !ctx->handler->on_end) {
        return;
    }
    try {
        ctx->handler->on_end(name);
    } catch (...) {
        ctx->error = std::current_exception();
        XML_StopParser(ctx->parser, XML_FALSE);
    }
}

void XMLCALL character_data(void* data, const XML_Char* text, int len) {
    auto* ctx = static_cast<Context*>(data);
    if (ctx->error || !ctx->handler->on_text) {
        return;
    }
    try {
        ctx->handler->on_text(std::string_view(text, static_cast<std::size_t>(len)));
    } catch (...) {
        ctx->error = std::current_exception();
        XML_StopParser(ctx->parser, XML_FALSE);
    }
}

}  // namespace

void parse_xml(std::string_view xml, const SaxHandler& handler) {
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
    if (!parser) {
        throw Error("cannot allocate XML parser");
    }
    if (xml.size() > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
        throw ParseError("XML input too large");
    }
    Context ctx{&handler, parser.get(), nullptr};
    XML_SetUserData(parser.get(), &ctx);
    XML_SetElementHandler(parser.get(), start_element, end_element);
    XML_SetCharacterDataHandler(parser.get(), character_data);

    auto status = XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()), XML_TRUE);
    if (ctx.error) {
        std::rethrow_exception(ctx.error);
    }
    if (status != XML_STATUS_OK) {
        std::ostringstream msg;
        msg << "line " << XML_GetCurrentLineNumber(parser.get()) << ", column "
            << XML_GetCurrentColumnNumber(parser.get()) << ": "
            << XML_ErrorString(XML_GetErrorCode(parser.get()));
        throw ParseError(msg.str());
    }
}

std::string_view find_attribute(const XmlAttributes& attrs, std::string_view name) {
    for (const auto& [key, value] : attrs) {
        if (key == name) {
            return value;
        }
    }
    return {};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw Error("cannot read " + path);
    }
    return buf.str();
}

}  // namespace xmlir::detail
