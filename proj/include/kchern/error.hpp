#pragma once

#include <stdexcept>
#include <string>

namespace kchern {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A structural invariant (unit, associativity, idempotence, ...) failed.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Operands of incompatible shape, algebra or scalar ring.
class MismatchError : public Error {
public:
    using Error::Error;
};

/// A form degree exceeded the configured degree cap.
class CapExceeded : public Error {
public:
    CapExceeded(int degree, int cap)
        : Error("form degree " + std::to_string(degree) + " exceeds degree cap " +
                std::to_string(cap)),
          degree_(degree), cap_(cap) {}

    int degree() const noexcept { return degree_; }
    int cap() const noexcept { return cap_; }

private:
    int degree_;
    int cap_;
};

}  // namespace kchern
