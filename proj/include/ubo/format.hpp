#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace ubo {

/// Shortest round-trip decimal form of v; stable across runs, which keeps
/// every CSV artifact byte-reproducible.
inline std::string format_double(double v) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace ubo
