#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace inkspect {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed header text. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// A mandatory header key is absent.
class MissingKeyError : public Error {
public:
    explicit MissingKeyError(const std::string& key)
        : Error("missing required key '" + key + "'"), key_(key) {}

    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// Fields parsed fine but contradict each other or an invariant.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// Unsupported data type, interleave or file layout.
class FormatError : public Error {
public:
    using Error::Error;
};

// Raw payload does not match the size implied by the header.
class SizeMismatchError : public Error {
public:
    SizeMismatchError(std::uint64_t expected, std::uint64_t actual)
        : Error("size mismatch: expected " + std::to_string(expected) +
                " bytes, got " + std::to_string(actual)),
          expected_(expected), actual_(actual) {}

    std::uint64_t expected() const { return expected_; }
    std::uint64_t actual() const { return actual_; }

private:
    std::uint64_t expected_;
    std::uint64_t actual_;
};

// Index or rectangle outside the addressed array.
class BoundsError : public Error {
public:
    using Error::Error;
};

// Parameter outside its documented domain (k, m, ranges, palettes, ...).
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

// An operation that needs at least one selected pixel got none.
class EmptySelectionError : public Error {
public:
    using Error::Error;
};

// File system failure: missing file, unreadable pair, failed write.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace inkspect
