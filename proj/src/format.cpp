#include "sturmkit/format.hpp"

#include <cstdio>

namespace sturmkit {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace sturmkit
