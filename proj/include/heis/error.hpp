#pragma once

#include <stdexcept>
#include <string>

namespace heis {

enum class ErrorKind {
  DimensionMismatch,
  ParityViolation,
  InvalidArgument,
  CapExceeded,
  OutOfSpan,
  Unbounded,
  NotASubgroup,
  Parse,
};

/// Exception type for every library failure. `path` names the offending
/// input field (e.g. "constraints[0].support[2]") when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string path = {})
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        kind_(kind),
        path_(std::move(path)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorKind kind_;
  std::string path_;
};

inline void require_same_dim(long a, long b) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                "dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace heis
