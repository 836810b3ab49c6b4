#pragma once

#include <stdexcept>
#include <string>

namespace xmlir {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text: XML documents, paths, topic or assessment files.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// A caller broke an operation's precondition.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Non-fatal problem tied to one input unit (a file, a topic, a judged path).
struct Diagnostic {
    std::string source;
    std::string message;
};

}  // namespace xmlir
