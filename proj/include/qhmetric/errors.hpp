#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qhm {

enum class ErrorKind {
  NotHermitian,
  NotPositiveDefinite,
  SingularTransform,
  IllConditioned,
  ComplexSpectrum,
  NonDiagonalizable,
  NotHermitianEquivalent,
  ResidualExceeded,
  InvalidModelParameters,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Base of every failure raised by the toolkit. The kind tells callers which
/// gate tripped; the message carries the offending quantity.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NotHermitian : public Error {
 public:
  explicit NotHermitian(const std::string& m) : Error(ErrorKind::NotHermitian, m) {}
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& m)
      : Error(ErrorKind::NotPositiveDefinite, m) {}
};

class SingularTransform : public Error {
 public:
  explicit SingularTransform(const std::string& m)
      : Error(ErrorKind::SingularTransform, m) {}
};

class IllConditioned : public Error {
 public:
  IllConditioned(const std::string& m, double condition)
      : Error(ErrorKind::IllConditioned, m), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Raised when the reality gate rejects part of the spectrum. Holds every
/// eigenvalue that failed the gate.
class ComplexSpectrum : public Error {
 public:
  ComplexSpectrum(const std::string& m, std::vector<std::complex<double>> offending)
      : Error(ErrorKind::ComplexSpectrum, m), offending_(std::move(offending)) {}
  const std::vector<std::complex<double>>& offending() const noexcept {
    return offending_;
  }

 private:
  std::vector<std::complex<double>> offending_;
};

class NonDiagonalizable : public Error {
 public:
  NonDiagonalizable(const std::string& m, double condition)
      : Error(ErrorKind::NonDiagonalizable, m), condition_(condition) {}
  /// Condition estimate of the eigenvector transform (infinity for a
  /// rank-deficient eigenspace).
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

class NotHermitianEquivalent : public Error {
 public:
  explicit NotHermitianEquivalent(const std::string& m)
      : Error(ErrorKind::NotHermitianEquivalent, m) {}
};

class ResidualExceeded : public Error {
 public:
  ResidualExceeded(std::string identity, double residual, double tolerance);
  const std::string& identity() const noexcept { return identity_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string identity_;
  double residual_;
};

class InvalidModelParameters : public Error {
 public:
  explicit InvalidModelParameters(const std::string& m)
      : Error(ErrorKind::InvalidModelParameters, m) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& m) : Error(ErrorKind::ParseError, m) {}
};

}  // namespace qhm
