#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mdwell {

// All library failures carry a stable machine-readable kind (e.g. "invalid-bounds",
// "lambda-forbidden") next to the human-readable message. The CLI maps kinds to
// exit codes; tests match on kinds instead of message text.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace mdwell
