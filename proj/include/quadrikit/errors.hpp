#pragma once

#include <stdexcept>
#include <string>

namespace quadrikit {

// Malformed textual input (expressions, .qf files, vector lists).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its domain: non-square determinant,
// k out of range, non-isotropic subbundle, ring mismatch...
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A certified identity did not hold. Carries a human-readable witness.
class VerificationError : public std::runtime_error {
public:
  VerificationError(const std::string &what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  explicit VerificationError(const std::string &what)
      : std::runtime_error(what) {}

  const std::string &witness() const noexcept { return witness_; }

private:
  std::string witness_;
};

} // namespace quadrikit
