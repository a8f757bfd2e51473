#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pscale {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Mismatched variable counts, out-of-range indices, malformed maps.
class ShapeError : public Error {
public:
    using Error::Error;
};

class DegreeCapExceeded : public Error {
public:
    using Error::Error;
};

/// A mathematical precondition of the scaling pipeline does not hold.
class HypothesisError : public Error {
public:
    using Error::Error;
};

}  // namespace pscale
