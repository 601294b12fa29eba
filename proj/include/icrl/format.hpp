// Shortest round-trip double formatting, shared by every writer so reruns of
// the same configuration produce byte-identical files.
#pragma once

#include <charconv>
#include <string>

namespace icrl {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace icrl
