#pragma once

#include <stdexcept>
#include <string>

namespace picyc {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: unreadable files, malformed records, invalid parameters.
class InputError : public Error {
public:
    using Error::Error;
};

class IoError : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    ParseError(const std::string &what, std::size_t line)
        : InputError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Binary artifact problems.
class BadMagicError : public InputError {
public:
    using InputError::InputError;
};

class VersionMismatchError : public InputError {
public:
    using InputError::InputError;
};

class TruncatedFileError : public InputError {
public:
    using InputError::InputError;
};

class DigestMismatchError : public InputError {
public:
    using InputError::InputError;
};

// Two artifacts that must belong together (graph/index, graph/cycles) do not.
class ArtifactMismatchError : public Error {
public:
    using Error::Error;
};

// Requested k-mer is not a node of the graph.
class LookupError : public Error {
public:
    using Error::Error;
};

// A path through the graph cannot be spelled as a consistent strand walk.
class OrientationError : public Error {
public:
    using Error::Error;
};

// Internal consistency check failed.
class InvariantError : public Error {
public:
    using Error::Error;
};

} // namespace picyc
