#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isotropy {

/// Bad user input: malformed text, dimension mismatch, violated precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in exact field") {}
};

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A block matrix does not lie in the rectangular block-Toeplitz pattern.
class ShapeViolation : public InputError {
 public:
  using InputError::InputError;
};

/// An exact identity that must hold by construction failed. Never expected.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A solver step read a coefficient that has not been computed yet.
class SequencingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace isotropy
