#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "broadwell/boundary_data.hpp"
#include "broadwell/fields.hpp"
#include "broadwell/model.hpp"
#include "broadwell/picard.hpp"

namespace broadwell::cli {

enum ExitCode : int {
  kOk = 0,
  kInadmissible = 2,
  kNotConverged = 3,
  kIncompatible = 4,
  kThreshold = 5,
  kMalformed = 64,
  kInternal = 70,
};

enum class OracleKind { Upwind, Picard, FreeStreaming };

struct VerifyConfig {
  OracleKind oracle = OracleKind::Upwind;
  std::optional<GridSpec> oracle_grid;
  /// Cubic grid sizes n (n x n x n) for a refinement study; empty means one
  /// comparison on the configured grids.
  std::vector<int> levels;
  double threshold = 1e-2;
  double cfl = 0.9;
};

struct RunConfig {
  ModelParams params;
  SpaceTimeBox box;
  GridSpec grid;
  SolveConfig solve;
  int c1_samples = 256;
  int compat_samples = 257;
  double compat_tol = 1e-9;
  VerifyConfig verify;
  BoundaryData data;
};

inline constexpr int kSchemaVersion = 1;

/// Validates the whole document; ConfigError on anything malformed, unknown
/// keys included.
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);

RunConfig load_run_config(const std::filesystem::path& path);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace broadwell::cli
