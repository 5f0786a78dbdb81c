#pragma once

#include <stdexcept>
#include <string>

namespace lpmult {

/// Malformed or invalid model input: unknown identifiers, broken invariants,
/// incompatible skeletons. The CLI maps these to exit code 2.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was asked of an object that does not satisfy its
/// precondition (e.g. inverting an operator that is not bounded below).
/// Carries a human-readable witness explaining the failure. Exit code 3.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}

  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

}  // namespace lpmult
