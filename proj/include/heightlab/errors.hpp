#pragma once

#include <stdexcept>
#include <string>

namespace heightlab {

/// Invalid input or a mathematically undefined request. CLI exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A degree, precision or memory budget was exceeded. CLI exit code 2.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked invariant failed. Carries the witness; never swallowed.
/// CLI exit code 3.
class InternalError : public std::runtime_error {
 public:
  InternalError(const std::string& what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}

  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

}  // namespace heightlab
