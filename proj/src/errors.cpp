#include "toescat/errors.hpp"

namespace toescat {

std::string to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InvalidConfig:
    return "InvalidConfig";
  case ErrorKind::InvalidSymbol:
    return "InvalidSymbol";
  case ErrorKind::SideRequired:
    return "SideRequired";
  case ErrorKind::AdmissibilityViolated:
    return "AdmissibilityViolated";
  case ErrorKind::BalanceViolation:
    return "BalanceViolation";
  case ErrorKind::BoundaryMassNonzero:
    return "BoundaryMassNonzero";
  case ErrorKind::DomainError:
    return "DomainError";
  case ErrorKind::QuadratureNonConvergence:
    return "QuadratureNonConvergence";
  case ErrorKind::NotAJump:
    return "NotAJump";
  case ErrorKind::FrameDeficient:
    return "FrameDeficient";
  }
  return "Error";
}

bool Error::numerical() const {
  switch (m_kind) {
  case ErrorKind::BalanceViolation:
  case ErrorKind::QuadratureNonConvergence:
  case ErrorKind::FrameDeficient:
    return true;
  default:
    return false;
  }
}

} // namespace toescat
