#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace quorum {

// Every failure carries a stable machine-readable code plus a human message.
// Codes are what tests and the CLI match on; messages are free-form.
struct Error : std::runtime_error {
  std::string code;

  Error(std::string code_, const std::string& message)
      : std::runtime_error(code_ + ": " + message), code(std::move(code_)) {}
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
  throw Error(std::move(code), message);
}

}  // namespace quorum
