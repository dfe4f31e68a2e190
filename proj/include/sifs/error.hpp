#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sifs {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arithmetic or precondition failure (division by zero, bad ranges).
class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace sifs
