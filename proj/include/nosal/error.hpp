#pragma once

#include <stdexcept>
#include <string>

namespace nosal {

/// Error categories shared by the C++ core and the C API status codes.
enum class ErrorKind {
  Parse = 1,
  Argument,
  Index,
  Capacity,
  Convergence,
  Degenerate,
  Infeasible,
  Precondition,
  NoWitness,
  Codec,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

const char* to_string(ErrorKind kind) noexcept;

}  // namespace nosal
