#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cstar/model.hpp"
#include "cstar/sampling.hpp"

namespace cstar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSuiteFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string command;
  std::string path_file;
  std::optional<Level> level;
  std::optional<double> a_mod, a_phase, b_mod, b_phase;
  double hbar = 1.0;
  std::optional<int> steps;
  std::string out_file;  // empty: standard output
  std::uint64_t seed = kDefaultSeed;
  double tol_scale = 1.0;
  std::optional<ParamPoint> guard_point;
};

/// Column headers, in order.
extern const std::vector<std::string> kSpectrumColumns;
extern const std::vector<std::string> kHolonomyColumns;
extern const std::vector<std::string> kEvolveColumns;

/// Shortest round-tripping decimal spelling.
std::string csv_number(double v);

/// Writes `content` to `filename` via a temporary file and rename.
void write_atomically(const std::string& filename, const std::string& content);

/// Entry point: parses arguments and dispatches. CSV goes to --out or `out`,
/// summaries and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_holonomy(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cstar
