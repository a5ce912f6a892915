#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace l22 {

// Single exception type for validation failures. The kind string is stable
// and machine readable (the CLI maps it into {"error": kind, "detail": ...}).
class Error : public std::runtime_error {
public:
  Error(std::string kind, std::string detail)
      : std::runtime_error(kind + ": " + detail),
        kind_(std::move(kind)),
        detail_(std::move(detail)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  std::string kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(std::string kind, std::string detail) {
  throw Error(std::move(kind), std::move(detail));
}

inline void require(bool ok, const char* kind, const std::string& detail) {
  if (!ok) fail(kind, detail);
}

}  // namespace l22
