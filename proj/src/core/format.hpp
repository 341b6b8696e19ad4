#pragma once

#include <cstdio>
#include <string>

namespace urank {

// All text serialization of reals goes through this: 17 significant digits
// round-trip a double exactly, and a single formatting path keeps repeated
// runs byte-identical.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace urank
