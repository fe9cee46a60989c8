#pragma once

#include <stdexcept>
#include <string>

namespace toricsm {

enum class ErrorKind {
  Parse,         // malformed input text
  Validation,    // input parsed but violates a structural invariant
  Precondition,  // operation called outside its domain
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_precondition(const std::string& what) {
  throw Error(ErrorKind::Precondition, what);
}

}  // namespace toricsm
