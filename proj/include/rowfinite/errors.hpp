#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rowfinite {

/// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (e.g. normalizing the zero row).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An operation needed data beyond a supplied finite prefix.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Malformed equation spec, unknown family, missing parameter.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a coefficient expression.
class ParseError : public SpecError {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Failure while evaluating a coefficient at a concrete (n, j).
class EvalError : public Error {
 public:
  EvalError(std::int64_t n, std::int64_t j, const std::string& message);

  std::int64_t n() const noexcept { return n_; }
  std::int64_t j() const noexcept { return j_; }

 private:
  std::int64_t n_;
  std::int64_t j_;
};

/// The system A.y = g has no solution at the current horizon.
class InconsistentSystem : public Error {
 public:
  explicit InconsistentSystem(std::vector<std::int64_t> violated);

  const std::vector<std::int64_t>& violated() const noexcept {
    return violated_;
  }

 private:
  std::vector<std::int64_t> violated_;
};

}  // namespace rowfinite
