#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covertrees {

/// Shape mismatch, e.g. a determinant of a non-square matrix.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input would exceed a hard size budget (edge count, vertex count, group rank).
class SizeLimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// An operation was called on an input outside its domain (e.g. a disconnected cover).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An internal identity that must hold exactly did not. Always a bug.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace covertrees
