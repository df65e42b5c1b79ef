#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confsel {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidName : public Error {
public:
    explicit InvalidName(const std::string& name);
};

class UnknownVertex : public Error {
public:
    explicit UnknownVertex(const std::string& name);
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class GraphError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message, const std::string& source = "");
    std::size_t line() const { return line_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class SizeCapExceeded : public Error {
public:
    using Error::Error;
};

class VertexBudgetExceeded : public Error {
public:
    using Error::Error;
};

// An oracle answer that is inconsistent with the question asked.
class InvalidAnswer : public Error {
public:
    using Error::Error;
};

class ReplayDivergence : public Error {
public:
    using Error::Error;
};

// A session request that does not fit the session's current phase, such as
// answering when no question is pending.
class SessionConflict : public Error {
public:
    using Error::Error;
};

// Transcript schema violation. line is 1-based within the document (the
// header is line 1); event_index is 0-based among events, or npos for the
// header itself.
class TranscriptError : public Error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    TranscriptError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }
    std::size_t event_index() const { return line_ >= 2 ? line_ - 2 : npos; }

private:
    std::size_t line_;
};

}  // namespace confsel
