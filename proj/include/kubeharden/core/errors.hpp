#pragma once

#include <stdexcept>
#include <string>

namespace kubeharden {

/// Base class for all pipeline errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (JSON/YAML). Carries a best-effort position.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, int line = -1, int column = -1)
        : Error(format(what, line, column)), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& what, int line, int column) {
        if (line < 0) return what;
        return what + " (line " + std::to_string(line) + ", column " +
               std::to_string(column) + ")";
    }
    int line_;
    int column_;
};

/// A document is missing a required field (e.g. kind, metadata.name).
class MissingFieldError : public Error {
public:
    explicit MissingFieldError(const std::string& field)
        : Error("missing required field: " + field), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// A policy/role rule cannot be decomposed (missing resources/verbs, unknown protocol).
class MalformedRuleError : public Error {
public:
    explicit MalformedRuleError(const std::string& what)
        : Error("malformed rule: " + what) {}
};

/// Aggregation recursion depth exceeded; signals pathological input.
class RecursionLimitError : public Error {
public:
    explicit RecursionLimitError(std::size_t limit)
        : Error("nested record exceeds recursion limit of " + std::to_string(limit)) {}
};

/// Provenance edge references a vertex id that does not exist.
class DanglingEdgeError : public Error {
public:
    DanglingEdgeError(const std::string& from, const std::string& to)
        : Error("edge references unknown vertex (from=" + from + ", to=" + to + ")") {}
};

/// More than the configured fraction of input lines failed to parse.
class FatalFormatError : public Error {
public:
    FatalFormatError(std::size_t failed, std::size_t total)
        : Error("too many malformed lines: " + std::to_string(failed) + "/" +
                std::to_string(total)) {}
};

/// Candidate and baseline element sets are of different element types.
class TypeMismatchError : public Error {
public:
    explicit TypeMismatchError(const std::string& what)
        : Error("element type mismatch: " + what) {}
};

/// A chain step references an input that was not provided.
class InputMissingError : public Error {
public:
    explicit InputMissingError(const std::string& name)
        : Error("required input missing: " + name), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// Transport-level or provider-side completion failure.
class BackendError : public Error {
public:
    explicit BackendError(const std::string& what) : Error(what) {}
};

class TimeoutError : public BackendError {
public:
    explicit TimeoutError(const std::string& what) : BackendError(what) {}
};

class RateLimitedError : public BackendError {
public:
    explicit RateLimitedError(const std::string& what, double retryAfterSeconds = 0.0)
        : BackendError(what), retry_after_(retryAfterSeconds) {}
    double retry_after_seconds() const { return retry_after_; }

private:
    double retry_after_;
};

class AuthError : public BackendError {
public:
    explicit AuthError(const std::string& what) : BackendError(what) {}
};

/// Replay backend has no recorded response for the requested prompt.
class ReplayMissError : public BackendError {
public:
    explicit ReplayMissError(const std::string& key)
        : BackendError("no recorded response for prompt key " + key) {}
};

/// Model output could not be parsed into manifests after the retry budget.
class ExtractionError : public Error {
public:
    explicit ExtractionError(const std::string& what) : Error(what) {}
};

} // namespace kubeharden
