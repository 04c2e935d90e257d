#pragma once

#include <stdexcept>
#include <string>

namespace sops {

// Error categories map one-to-one onto the C status codes.
enum class ErrorKind {
  InvalidArgument,
  Validation,
  Io,
  Domain,
  Budget,
  Runtime,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_argument(const std::string& msg) { return Error(ErrorKind::InvalidArgument, msg); }
inline Error validation_error(const std::string& msg) { return Error(ErrorKind::Validation, msg); }
inline Error io_error(const std::string& msg) { return Error(ErrorKind::Io, msg); }
inline Error domain_error(const std::string& msg) { return Error(ErrorKind::Domain, msg); }
inline Error budget_error(const std::string& msg) { return Error(ErrorKind::Budget, msg); }

}  // namespace sops
