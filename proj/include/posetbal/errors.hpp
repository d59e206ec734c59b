#pragma once

#include <stdexcept>
#include <string>

namespace posetbal {

// Root of every error raised by the library. The CLI maps subclasses onto
// exit codes, so new error kinds should derive from the closest match.
class PosetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public PosetError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : PosetError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class CycleError : public PosetError {
 public:
  using PosetError::PosetError;
};

class IndexError : public PosetError {
 public:
  using PosetError::PosetError;
};

class InvalidArgument : public PosetError {
 public:
  using PosetError::PosetError;
};

class InconsistentRelation : public PosetError {
 public:
  using PosetError::PosetError;
};

class NotAChain : public PosetError {
 public:
  using PosetError::PosetError;
};

class InvalidMatching : public PosetError {
 public:
  InvalidMatching(const std::string& what, std::size_t element)
      : PosetError(what), element_(element) {}
  std::size_t element() const noexcept { return element_; }

 private:
  std::size_t element_;
};

class DomainError : public PosetError {
 public:
  using PosetError::PosetError;
};

class StatUnavailable : public PosetError {
 public:
  using PosetError::PosetError;
};

class NoFeasibleKL : public PosetError {
 public:
  using PosetError::PosetError;
};

/// Resource guards. Anything derived from CapError means "the instance is
/// too large for the requested exact computation", not "the input is wrong".
class CapError : public PosetError {
 public:
  using PosetError::PosetError;
};

class SizeCapExceeded : public CapError {
 public:
  using CapError::CapError;
};

class IdealCapExceeded : public CapError {
 public:
  using CapError::CapError;
};

class EnumCapExceeded : public CapError {
 public:
  using CapError::CapError;
};

class BudgetExceeded : public CapError {
 public:
  using CapError::CapError;
};

}  // namespace posetbal
