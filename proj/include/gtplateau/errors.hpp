#pragma once

#include <stdexcept>
#include <string>

namespace gtp {

/// Error categories. The CLI maps each category to its own exit code.
enum class ErrorKind {
  Configuration,
  Domain,
  Validation,
  Solver,
  Reconstruction,
  Parse,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigurationError : Error {
  explicit ConfigurationError(const std::string& w) : Error(ErrorKind::Configuration, w) {}
};

/// Parameter outside its domain, e.g. t outside [0,1].
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(ErrorKind::Validation, w) {}
};

/// Singular or non-SPD linear system.
struct SolverError : Error {
  explicit SolverError(const std::string& w) : Error(ErrorKind::Solver, w) {}
};

/// Harmonic reconstruction could not determine the missing points.
struct ReconstructionError : Error {
  explicit ReconstructionError(const std::string& w) : Error(ErrorKind::Reconstruction, w) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};

}  // namespace gtp
