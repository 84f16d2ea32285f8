#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sturmkit::cli {

enum class Command {
  solve,
  zeros,
  disconjugate,
  sct,
  converse,
  theorem1,
  track_zero,
  epsilon0,
  construct,
  property_sweep,
};

enum class Format { json, csv };

struct RunConfig {
  Command command = Command::epsilon0;
  std::map<std::string, std::vector<std::string>> parameters;  // flag name (no dashes) → values
  std::optional<std::string> output;
  std::optional<Format> format;  // unset: the command's natural format
  std::uint64_t seed = 0;
};

// Bad flag value or missing flag; exit code 2.
class UsageError : public std::runtime_error {
 public:
  UsageError(std::string flag, const std::string& what) : std::runtime_error(what), flag_(std::move(flag)) {}
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFinding = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Validates the parameters, then computes and writes the result. Returns 0
/// or kExitFinding; throws UsageError, NumericError, InternalError.
int execute(const RunConfig& cfg, std::ostream& out);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);  // args[0] is the program

}  // namespace sturmkit::cli
