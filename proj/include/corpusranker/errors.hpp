#pragma once

#include <stdexcept>
#include <string>

namespace corpusranker {

// Exit codes used by the CLI. Stable API.
enum class ErrorKind {
    io = 2,          // unreadable/unwritable file
    schema = 3,      // malformed input data (CSV structure, bad values)
    config = 4,      // invalid configuration / flag combination
    lookup = 5,      // unknown topic id or similar key miss
    empty_eval = 6,  // evaluation has no judged pairs to work with
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(ErrorKind::io, message) {}
};

// Structural CSV problems (unbalanced quotes, ragged rows). Carries the line
// number where the problem was detected.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error(ErrorKind::schema, message + " (line " + std::to_string(line) + ")"),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A required column is missing or a value violates its domain.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& message) : Error(ErrorKind::schema, message) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message) : Error(ErrorKind::schema, message) {}
};

// Binary container problems: bad magic, unsupported version, truncation.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& message) : Error(ErrorKind::schema, message) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error(ErrorKind::config, message) {}
};

class LookupError : public Error {
public:
    explicit LookupError(const std::string& message) : Error(ErrorKind::lookup, message) {}
};

class EmptyEvaluationError : public Error {
public:
    explicit EmptyEvaluationError(const std::string& message)
        : Error(ErrorKind::empty_eval, message) {}
};

// Violated programming contract (dimension mismatch and the like).
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& message) : std::logic_error(message) {}
};

}  // namespace corpusranker
