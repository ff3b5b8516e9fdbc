#ifndef MLAB_ERROR_HPP
#define MLAB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression or ring string. `position` is a 0-based byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Operands live in different rings or coefficient modes.
class ContextMismatch : public Error {
public:
    using Error::Error;
};

/// Precondition on an argument violated (zero input, index out of range, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A configured step, box or memory cap was exceeded. Never a wrong answer.
class ResourceBound : public Error {
public:
    using Error::Error;
};

} // namespace mlab

#endif
