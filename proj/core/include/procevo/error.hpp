#ifndef PROCEVO_ERROR_HPP
#define PROCEVO_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace procevo {

/// Base of every domain error raised by the library. The CLI maps these to
/// exit status 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed line in a line-oriented document (graph, comparison, TSV, config).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line), message_(message) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::string message_;
};

class InvalidTerm : public Error {
public:
    using Error::Error;
};

class XmlSyntaxError : public Error {
public:
    XmlSyntaxError(std::size_t line, const std::string& message)
        : Error("XML syntax error at line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DuplicateEntityId : public Error {
public:
    using Error::Error;
};

class MissingCorpus : public Error {
public:
    using Error::Error;
};

class MetadataMismatch : public Error {
public:
    using Error::Error;
};

class NonMonotonicVersion : public Error {
public:
    using Error::Error;
};

class DuplicateVersion : public Error {
public:
    using Error::Error;
};

class UnknownVersion : public Error {
public:
    using Error::Error;
};

class BaseMismatch : public Error {
public:
    using Error::Error;
};

class MalformedQuery : public Error {
public:
    using Error::Error;
};

class LabelConstraintOnPlainGraph : public Error {
public:
    using Error::Error;
};

class MalformedChangeGraph : public Error {
public:
    using Error::Error;
};

class MissingChangeRecords : public Error {
public:
    using Error::Error;
};

class MissingTimestamps : public Error {
public:
    using Error::Error;
};

class UnknownModule : public Error {
public:
    using Error::Error;
};

class EmptySeries : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class StorageError : public Error {
public:
    using Error::Error;
};

} // namespace procevo

#endif
