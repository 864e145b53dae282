#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace determina {

// Input or validation problem; the CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string &what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Variable-count or matrix-shape mismatch.
class ShapeError : public InputError {
public:
    using InputError::InputError;
};

// A structure tag (sym, skew, upper, monomial, ...) is violated.
class StructureError : public InputError {
public:
    using InputError::InputError;
};

// A truncated computation could not see the data it needed.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string &what, unsigned required)
        : std::runtime_error(what + " (required truncation > " + std::to_string(required) + ")"),
          required_(required) {}

    unsigned required() const noexcept { return required_; }

private:
    unsigned required_;
};

// A self-check of a construction failed. Always a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace determina
