#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sturmkit {

struct PropertyResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

/// Randomized invariant suites, `count` cases each. The seed fully
/// determines every generated case.
std::vector<PropertyResult> run_property_sweep(std::uint64_t seed, std::size_t count);

}  // namespace sturmkit
