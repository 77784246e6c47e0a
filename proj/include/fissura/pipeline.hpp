#pragma once

#include "fissura/curvature.hpp"
#include "fissura/friction.hpp"
#include "fissura/gravity.hpp"
#include "fissura/mesh.hpp"
#include "fissura/network.hpp"
#include "fissura/superposition.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fissura {

struct SamplingConfig {
  int dense_scan = 8192;
  int product_samples = 10000;
  int entropy_bins = 16;
};

struct NetworkConfig {
  int nx = 3;
  int ny = 3;
  double cell_size = 1.0;
  /// Cells hosting the analysed crack; empty means every cell.
  std::vector<std::array<int, 2>> cracked;
};

struct RunConfig {
  SurfaceSpec surface;
  MeshOptions mesh;
  FluidParams fluid;
  std::set<std::string> analyses;
  SamplingConfig sampling;
  NetworkConfig network;
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  /// Parses and validates. Relative heightmap paths resolve against base_dir.
  /// Throws ConfigError naming the offending field.
  static RunConfig from_json(const nlohmann::json& j, const std::string& base_dir = ".");
  static RunConfig from_file(const std::string& path);
  void validate() const;
  /// Replaces the run seed and the mesh jitter seed.
  void set_seed(std::uint64_t s);
  nlohmann::json to_json() const;
};

struct RunResult {
  nlohmann::json report;
  std::string directions_csv;
  std::string energy_profile_csv;
  std::optional<std::string> network_mtx;
};

RunResult run_pipeline(const RunConfig& config);

/// Writes report.json, directions.csv, energy_profile.csv and network.mtx.
void write_artifacts(const RunResult& result, const std::string& dir);

/// {"error": {"type", "field", "message"}}
nlohmann::json error_object(const std::exception& e);

/// Grid description: {nx, ny, cell_size, cells: [{x, y, atoms: [{dir, p}]}]}.
FissureGrid grid_from_json(const nlohmann::json& j);

std::string read_text_file(const std::string& path);

}  // namespace fissura
