// fissura: crack-surface flow-direction analysis.
//
//   fissura run --config cfg.json [--out DIR] [--seed N]
//   fissura mesh --check mesh.json
//   fissura network --grid grid.json [--out DIR]

#include "fissura/errors.hpp"
#include "fissura/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

int fail(const std::exception& e) {
  std::cerr << fissura::error_object(e).dump() << std::endl;
  return 2;
}

nlohmann::json load_json(const std::string& path) {
  const std::string text = fissura::read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw fissura::ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preferential flow directions on triangulated crack surfaces"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Run the analysis pipeline");
  run->add_option("--config", config_path, "Run configuration (JSON)")->required();
  auto* out_opt = run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  auto* seed_opt = run->add_option("--seed", seed, "Seed for mesh jitter and product sampling");

  std::string mesh_path;
  auto* mesh = app.add_subcommand("mesh", "Validate a mesh file");
  mesh->add_option("--check", mesh_path, "Mesh JSON {vertices, triangles}")->required();

  std::string grid_path, grid_out = ".";
  auto* network = app.add_subcommand("network", "Build the transmission matrix of a grid");
  network->add_option("--grid", grid_path, "Grid JSON {nx, ny, cell_size, cells}")->required();
  network->add_option("--out", grid_out, "Directory for network.mtx");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      fissura::RunConfig config = fissura::RunConfig::from_file(config_path);
      if (*seed_opt) config.set_seed(seed);
      if (*out_opt) config.output_dir = out_dir;
      const fissura::RunResult result = fissura::run_pipeline(config);
      fissura::write_artifacts(result, config.output_dir);
      std::cout << "wrote " << config.output_dir << "/report.json" << std::endl;
      return 0;
    }
    if (*mesh) {
      const fissura::Mesh2D m = fissura::mesh_from_json(load_json(mesh_path));
      const fissura::ValidationReport report = fissura::validate_mesh(m);
      std::cout << fissura::report_to_json(report).dump(2) << std::endl;
      return report.ok() ? 0 : 1;
    }
    if (*network) {
      const fissura::FissureGrid grid = fissura::grid_from_json(load_json(grid_path));
      const fissura::TransmissionMatrix m = fissura::build_matrix(grid);
      std::filesystem::create_directories(grid_out);
      const auto path = std::filesystem::path(grid_out) / "network.mtx";
      std::ofstream os(path);
      if (!os) throw fissura::IoError("cannot write " + path.string());
      m.write_matrix_market(os);
      const fissura::StationaryResult st = fissura::stationary(m);
      std::cout << nlohmann::json{{"matrix", path.string()},
                                  {"stationary", st.pi},
                                  {"converged", st.converged},
                                  {"iterations", st.iterations}}
                       .dump(2)
                << std::endl;
      return 0;
    }
  } catch (const std::exception& e) {
    return fail(e);
  }
  return 0;
}
