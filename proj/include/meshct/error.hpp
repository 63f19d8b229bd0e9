#pragma once

#include <stdexcept>
#include <string>

namespace meshct {

// Error with a stable machine-readable code ("unsupported-type", ...) next to
// the human message; the CLI maps codes to exit status 2 for usage errors.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace meshct
