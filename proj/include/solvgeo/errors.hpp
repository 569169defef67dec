#pragma once

#include <stdexcept>
#include <string>

namespace solvgeo {

enum class ErrorKind {
  InvalidDimension,     // n < 2 and friends
  Dimension,            // operand sizes disagree
  Domain,               // input outside the operation's domain
  Conditioning,         // numerically degenerate input
  Singular,             // lambda = 0 and similar
  ConstraintViolation,  // algebraic constraint (e.g. lambda-symplecticity) fails
  Parse,                // malformed input document
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace solvgeo
