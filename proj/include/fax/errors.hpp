#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fax {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Regex or file-format text could not be parsed. Carries a position
/// (character offset or line number, depending on the source).
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class UnknownSymbolError : public Error {
public:
    using Error::Error;
};

class AlphabetMismatchError : public Error {
public:
    using Error::Error;
};

class NotDeterministicError : public Error {
public:
    using Error::Error;
};

/// Subset construction exceeded its state cap.
class StateExplosionError : public Error {
public:
    using Error::Error;
};

/// A search exceeded its configured node budget. Raised instead of ever
/// returning a possibly-wrong answer.
class BudgetExceededError : public Error {
public:
    using Error::Error;
};

/// An empty dual set was handed to the hitting-set engine.
class InvalidDualError : public Error {
public:
    using Error::Error;
};

class NotWeakAxpError : public Error {
public:
    using Error::Error;
};

class EmptyAttributionError : public Error {
public:
    using Error::Error;
};

/// A benchmark generator gave up after its retry cap.
class GenerationError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace fax
