#pragma once

#include <stdexcept>
#include <string>

namespace barycentra {

// Base for every error raised by the library. Input problems (bad files,
// malformed values, violated preconditions) derive from this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// A scalar left its legal domain: a weight outside ]0,1[, a non-prime
// modulus, a division by zero in GF(p).
class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace barycentra
