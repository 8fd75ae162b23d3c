#pragma once

#include <stdexcept>
#include <string>

namespace kzero {

/// Base of every error raised on well-formed but mathematically invalid input.
/// The CLI maps these to exit status 1.
class DomainError : public std::runtime_error {
public:
  DomainError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

struct InputError : DomainError {
  explicit InputError(const std::string& what) : DomainError("input", what) {}
};

struct GradingError : DomainError {
  explicit GradingError(const std::string& what) : DomainError("grading", what) {}
};

struct PeriodError : DomainError {
  explicit PeriodError(const std::string& what) : DomainError("unsupported-period", what) {}
};

struct ValidationError : DomainError {
  explicit ValidationError(const std::string& what) : DomainError("validation", what) {}
};

struct PreconditionError : DomainError {
  explicit PreconditionError(const std::string& what) : DomainError("precondition", what) {}
};

struct UnstableError : DomainError {
  explicit UnstableError(const std::string& what) : DomainError("unstable", what) {}
};

/// Malformed documents or unknown names. Exit status 2.
class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace kzero
