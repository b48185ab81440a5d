#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace beable {

// Every failure raised by the library derives from Error so callers (the CLI in
// particular) can separate validation problems from I/O problems.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class IncompatibleStates : public Error {
 public:
  using Error::Error;
};

class IncompatibleGrids : public Error {
 public:
  using Error::Error;
};

class InvalidGrid : public Error {
 public:
  using Error::Error;
};

class AmbiguousMaximum : public Error {
 public:
  using Error::Error;
};

class NoCrossing : public Error {
 public:
  using Error::Error;
};

class AmbiguousCrossing : public Error {
 public:
  using Error::Error;
};

class DegenerateWeights : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class InvalidPoint : public Error {
 public:
  using Error::Error;
};

class InsufficientSignal : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

/// Malformed grid file. Carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Filesystem failures; the CLI maps these to exit status 1.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace beable
