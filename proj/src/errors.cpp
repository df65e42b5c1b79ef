#include "confsel/errors.hpp"

namespace confsel {

InvalidName::InvalidName(const std::string& name)
    : Error("invalid vertex name '" + name +
            "': names must match [A-Za-z_][A-Za-z0-9_]*") {}

UnknownVertex::UnknownVertex(const std::string& name)
    : Error("unknown vertex '" + name + "'"), name_(name) {}

ParseError::ParseError(std::size_t line, const std::string& message, const std::string& source)
    : Error((source.empty() ? "line " : source + ":") + std::to_string(line) + ": " + message),
      line_(line),
      detail_(message) {}

TranscriptError::TranscriptError(std::size_t line, const std::string& message)
    : Error(line >= 2 ? "line " + std::to_string(line) + " (event " +
                            std::to_string(line - 2) + "): " + message
                      : "line " + std::to_string(line) + " (header): " + message),
      line_(line) {}

}  // namespace confsel
