#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rzk {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition stated on an operation was not met by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The input is larger than an exhaustive routine is configured to handle.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

class InvalidEdgeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant broke. Raised instead of emitting bad output.
class InternalInvariantError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Malformed text or binary input. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A prover reply was missing or malformed; the session stops at `round`.
class ProtocolAbort : public Error {
 public:
  ProtocolAbort(std::uint32_t round, const std::string& what)
      : Error("round " + std::to_string(round) + ": " + what), round_(round) {}
  std::uint32_t round() const noexcept { return round_; }

 private:
  std::uint32_t round_;
};

}  // namespace rzk
