#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ellflop {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
   public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

   private:
    std::size_t position_;
};

/// Operands live in different variable universes.
class UniverseMismatch : public Error {
    using Error::Error;
};

class DivisionByZero : public Error {
    using Error::Error;
};

/// A polynomial argument was expected to be non-constant (or non-zero) but was not.
class DegenerateArgument : public Error {
    using Error::Error;
};

class ZeroDiscriminant : public Error {
   public:
    ZeroDiscriminant() : Error("4*f^3 + 27*g^2 vanishes identically; not an elliptic fibration") {}
};

class MalformedTriple : public Error {
    using Error::Error;
};

class NotIsolated : public Error {
    using Error::Error;
};

class RestrictedDeltaZero : public Error {
    using Error::Error;
};

class InconsistentConfiguration : public Error {
    using Error::Error;
};

}  // namespace ellflop
