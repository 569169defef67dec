#include "solvgeo/errors.hpp"

namespace solvgeo {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Conditioning: return "conditioning";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::ConstraintViolation: return "constraint-violation";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace solvgeo
