#pragma once
#include <stdexcept>
#include <string>

namespace toescat {

enum class ErrorKind {
  InvalidConfig,
  InvalidSymbol,
  SideRequired,
  AdmissibilityViolated,
  BalanceViolation,
  BoundaryMassNonzero,
  DomainError,
  QuadratureNonConvergence,
  NotAJump,
  FrameDeficient
};

std::string to_string(ErrorKind kind);

//! Base of every error raised by the library. `kind()` selects the CLI exit code.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(to_string(kind) + ": " + what), m_kind(kind) {}
  ErrorKind kind() const { return m_kind; }
  //! True for failures of a numerical routine, false for rejected input.
  bool numerical() const;

private:
  ErrorKind m_kind;
};

template <ErrorKind K> class TypedError : public Error {
public:
  explicit TypedError(const std::string &what) : Error(K, what) {}
};

using InvalidConfig = TypedError<ErrorKind::InvalidConfig>;
using InvalidSymbol = TypedError<ErrorKind::InvalidSymbol>;
using SideRequired = TypedError<ErrorKind::SideRequired>;
using AdmissibilityViolated = TypedError<ErrorKind::AdmissibilityViolated>;
using BalanceViolation = TypedError<ErrorKind::BalanceViolation>;
using BoundaryMassNonzero = TypedError<ErrorKind::BoundaryMassNonzero>;
using DomainError = TypedError<ErrorKind::DomainError>;
using QuadratureNonConvergence =
    TypedError<ErrorKind::QuadratureNonConvergence>;
using NotAJump = TypedError<ErrorKind::NotAJump>;
using FrameDeficient = TypedError<ErrorKind::FrameDeficient>;

} // namespace toescat
