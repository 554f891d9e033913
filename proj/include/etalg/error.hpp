#pragma once

#include <stdexcept>
#include <string>

namespace etalg {

enum class ErrorKind {
  invalid_input,  // a precondition on the arguments does not hold
  schema,         // malformed serialized data
  domain,         // evaluation outside the domain of a map
  failed,         // a constructive step could not be completed
  internal,       // an internal consistency check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace etalg
