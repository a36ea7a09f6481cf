#pragma once

#include <stdexcept>
#include <string>

namespace subdyn {

/// Broad classification used by the CLI to pick an exit code.
enum class ErrorKind {
  domain,        ///< letter or alphabet outside what an operation accepts
  resource,      ///< configured size cap exceeded
  precondition,  ///< input violates a documented precondition
  convergence,   ///< iteration did not settle within its cap
  parameter,     ///< numeric parameter out of range
  format,        ///< malformed rule file or command-line value
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::resource: return "resource";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::format: return "format";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};
struct ResourceError : Error {
  explicit ResourceError(const std::string& what) : Error(ErrorKind::resource, what) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::precondition, what) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& what)
      : Error(ErrorKind::convergence, what) {}
};
struct ParameterError : Error {
  explicit ParameterError(const std::string& what) : Error(ErrorKind::parameter, what) {}
};
struct FormatError : Error {
  explicit FormatError(const std::string& what) : Error(ErrorKind::format, what) {}
};

}  // namespace subdyn
