#pragma once

#include <string>

namespace sturmkit {

/// Shortest-form-independent rendering with 17 significant digits ("%.17g").
std::string format_real(double x);

}  // namespace sturmkit
