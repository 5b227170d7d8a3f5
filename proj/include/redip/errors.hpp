#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redip {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Automata
class AlphabetMismatch : public Error { public: using Error::Error; };
class ZeroMass : public Error { public: using Error::Error; };
class InfiniteMass : public Error { public: using Error::Error; };

// Serialization
class ParseError : public Error { public: using Error::Error; };
class InvalidWeight : public Error { public: using Error::Error; };

// Distributions
class InvalidParameter : public Error { public: using Error::Error; };
class CustomMassNotOne : public Error { public: using Error::Error; };
class CustomNotNormalized : public Error { public: using Error::Error; };

// Language front end. Line and column are 1-based.
class SourceError : public Error {
public:
    SourceError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SyntaxError : public SourceError { public: using SourceError::SourceError; };
class GuardConstraintError : public SourceError { public: using SourceError::SourceError; };
class ProbabilityRangeError : public SourceError { public: using SourceError::SourceError; };
class UnknownVariable : public Error { public: using Error::Error; };

// Inference and oracle
class InfeasibleObservation : public Error { public: using Error::Error; };
class UnsupportedIid : public Error { public: using Error::Error; };

/// A file could not be read or written.
class IoError : public Error { public: using Error::Error; };

}  // namespace redip
