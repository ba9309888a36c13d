#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace tsallis::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

inline constexpr const char* kPrecisionEnv = "TSALLIS_LAB_PRECISION";

/// Everything a run depends on. Embedded in every JSON report so the run
/// can be replayed exactly.
struct RunConfig {
  std::string command;
  std::string alpha = "2";
  std::string vector;
  std::string p;
  std::size_t max_steps = 0;
  /// tsallis | shannon | closed-form | zero | table:<path>
  std::string functional = "tsallis";
  std::string fallback = "tsallis";
  std::string c;
  std::string perturb_at;
  std::string perturb_delta;
  long max_denominator = 6;
  std::size_t max_length = 4;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double continuity_constant = 2.0;
  long b = 4;
  std::size_t L = 4;
  std::size_t grid_cap = 250000;
  unsigned precision = 128;
  /// json | csv | plain; empty picks the command default.
  std::string format;
  std::string output;
};

nlohmann::ordered_json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::ordered_json& j);

/// Runs one command, writing the report to `out` (or config.output) and
/// diagnostics to `err`. Returns the exit status.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// argv front end (CLI11). `replay <report.json>` re-runs the embedded
/// config.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace tsallis::cli
