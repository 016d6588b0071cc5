#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lmzv/io.hpp"

namespace lmzv::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;

struct RunConfig {
  std::uint64_t p = 2;
  std::uint64_t level = 1;
  std::uint64_t depth = 1;
  std::uint64_t degree = 4;
  std::uint64_t seed = 0;
  std::uint64_t exp_cap = 7;
  std::int64_t magnitude = 3;
  std::vector<std::uint64_t> target;  // certificate target n_1..n_{r-1}, a
  std::string format = "json";
  std::optional<std::filesystem::path> in;
  std::optional<std::filesystem::path> out;

  std::uint64_t size_cap = 10000;  // p^{nr}
  std::uint64_t degree_cap = 8;
  std::uint64_t alphabet_cap = 10;  // p^n + 1
};

/// Size cap from MZV_CAP when set to a positive integer, else the default.
std::uint64_t size_cap_from_env();

/// Throws DomainError or CapExceeded for an invalid or oversized config.
void validate(const RunConfig& config);

struct CommandResult {
  io::Json report;
  int exit_code = exit_pass;
};

CommandResult cmd_kernel(const RunConfig& config);
CommandResult cmd_vanish(const RunConfig& config);
CommandResult cmd_certificate(const RunConfig& config);
CommandResult cmd_check_rhombus(const RunConfig& config);
CommandResult cmd_moments(const RunConfig& config);
CommandResult cmd_report(const RunConfig& config);
/// Re-runs the report stored at config.in and compares its verdicts.
CommandResult cmd_verify(const RunConfig& config);

/// Parses argv, runs one command, writes its JSON to --out or `out`, and
/// returns the exit code. Errors go to `err` as one line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lmzv::cli
