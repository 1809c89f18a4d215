#pragma once

#include <charconv>
#include <optional>
#include <string>

namespace netform::csv {

/// Shortest round-trip decimal, locale independent.
inline std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

inline constexpr const char* kMissing = "NA";

inline std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(kMissing); }

}  // namespace netform::csv
