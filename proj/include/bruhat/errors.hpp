#pragma once

#include <stdexcept>
#include <string>

namespace bruhat {

// Base for every domain error raised by the library. The CLI maps these to
// exit code 1; ParseError and UsageError map to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InvalidPermutation : public ParseError {
public:
    using ParseError::ParseError;
};

class SizeMismatch : public Error {
public:
    SizeMismatch(std::size_t a, std::size_t b)
        : Error("size mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class IncomparableEndpoints : public Error {
public:
    IncomparableEndpoints(const std::string& bottom, const std::string& top)
        : Error("endpoints are incomparable in weak order: " + bottom + " is not below " + top) {}
};

class NotSeparable : public Error {
public:
    explicit NotSeparable(const std::string& word)
        : Error("permutation " + word + " is not separable (contains 2413 or 3142)") {}
};

class Not231Avoiding : public Error {
public:
    explicit Not231Avoiding(const std::string& word)
        : Error("permutation " + word + " contains the pattern 231") {}
};

class NonzeroRemainder : public Error {
public:
    NonzeroRemainder() : Error("polynomial division left a nonzero remainder") {}
};

// Raised when a size guard (memory or running-time) would be exceeded.
// The message names the override to use.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

class InternalInversionFailure : public Error {
public:
    using Error::Error;
};

class CheckpointError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace bruhat
