#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace arithstat::io {

/// Reals are written with 17 significant digits so that they round-trip.
inline std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

inline std::string format_int(std::int64_t value) {
  return std::to_string(value);
}

}  // namespace arithstat::io
