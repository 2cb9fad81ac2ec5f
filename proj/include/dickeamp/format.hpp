// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace dickeamp {

/// Shortest decimal string that parses back to exactly `x`.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

}  // namespace dickeamp
