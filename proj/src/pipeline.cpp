#include "fissura/pipeline.hpp"

#include "fissura/errors.hpp"
#include "fissura/lift.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace fissura {

namespace {

using nlohmann::json;

const std::set<std::string> kAnalyses{"curvature", "gravity", "friction", "superposition", "entropy", "network"};

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "config" : path, "expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError(path.empty() ? key : path + "." + key, "unknown field");
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double get_number(const json& j, const std::string& path, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(join(path, key), "must be finite");
  return d;
}

long long get_int(const json& j, const std::string& path, const std::string& key, long long fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
  return v.get<long long>();
}

Point2 parse_point(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(field, "expected [x, y]");
  return {v[0].get<double>(), v[1].get<double>()};
}

SurfaceSpec parse_surface(const json& j, const std::string& base_dir) {
  check_keys(j, "surface", {"kind", "params", "domain", "heightmap"});
  if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError("surface.kind", "expected a string");
  SurfaceSpec spec;
  try {
    spec.kind = surface_kind_from_string(j["kind"].get<std::string>());
  } catch (const Error& e) {
    throw ConfigError("surface.kind", e.what());
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ConfigError("surface.params", "expected an object");
    for (const auto& [key, value] : j["params"].items()) {
      if (!value.is_number()) throw ConfigError("surface.params." + key, "expected a number");
      spec.params[key] = value.get<double>();
    }
  }
  try {
    if (j.contains("domain")) {
      if (!j["domain"].is_array()) throw ConfigError("surface.domain", "expected a list of [x, y] points");
      std::vector<Point2> pts;
      for (std::size_t i = 0; i < j["domain"].size(); ++i)
        pts.push_back(parse_point(j["domain"][i], "surface.domain[" + std::to_string(i) + "]"));
      spec.domain = Polygon2D(pts);
    } else {
      spec.domain = Polygon2D::rectangle(0.0, 0.0, 1.0, 1.0);
    }
  } catch (const InvalidPolygon& e) {
    throw ConfigError("surface.domain", e.what());
  }
  if (spec.kind == SurfaceKind::heightmap) {
    if (!j.contains("heightmap") || !j["heightmap"].is_string())
      throw ConfigError("surface.heightmap", "heightmap surfaces need a CSV path");
    std::filesystem::path p = j["heightmap"].get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    try {
      spec.heightmap = std::make_shared<Heightmap>(Heightmap::load_csv(p.string()));
    } catch (const Error& e) {
      throw ConfigError("surface.heightmap", e.what());
    }
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    throw ConfigError("surface", e.what());
  }
  return spec;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void append_rows(std::ostringstream& csv, const std::string& source, const std::vector<DirectionAtom>& atoms) {
  for (const auto& a : atoms)
    csv << source << ',' << fmt(a.dir.x()) << ',' << fmt(a.dir.y()) << ',' << fmt(a.dir.z()) << ','
        << fmt(a.probability) << '\n';
}

}  // namespace

RunConfig RunConfig::from_json(const json& j, const std::string& base_dir) {
  check_keys(j, "", {"surface", "mesh", "fluid", "analyses", "sampling", "network", "seed", "output_dir"});
  RunConfig c;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      throw ConfigError("seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (!j.contains("surface")) throw ConfigError("surface", "missing");
  c.surface = parse_surface(j["surface"], base_dir);

  c.mesh.seed = c.seed;
  if (j.contains("mesh")) {
    const json& m = j["mesh"];
    check_keys(m, "mesh", {"edge_length", "jitter", "seed"});
    c.mesh.target_edge_length = get_number(m, "mesh", "edge_length", c.mesh.target_edge_length);
    c.mesh.jitter = get_number(m, "mesh", "jitter", c.mesh.jitter);
    const long long s = get_int(m, "mesh", "seed", static_cast<long long>(c.seed));
    if (s < 0) throw ConfigError("mesh.seed", "expected a non-negative integer");
    c.mesh.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("fluid")) {
    const json& f = j["fluid"];
    check_keys(f, "fluid", {"mu", "rho", "g", "gamma"});
    c.fluid.mu = get_number(f, "fluid", "mu", c.fluid.mu);
    c.fluid.rho = get_number(f, "fluid", "rho", c.fluid.rho);
    c.fluid.g = get_number(f, "fluid", "g", c.fluid.g);
    c.fluid.gamma = get_number(f, "fluid", "gamma", c.fluid.gamma);
  }
  if (j.contains("analyses")) {
    const json& a = j["analyses"];
    if (!a.is_array()) throw ConfigError("analyses", "expected a list of analysis names");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_string() || !kAnalyses.count(a[i].get<std::string>()))
        throw ConfigError("analyses[" + std::to_string(i) + "]", "unknown analysis");
      c.analyses.insert(a[i].get<std::string>());
    }
  } else {
    c.analyses = kAnalyses;
  }
  if (j.contains("sampling")) {
    const json& s = j["sampling"];
    check_keys(s, "sampling", {"dense_scan", "product_samples", "entropy_bins"});
    c.sampling.dense_scan = static_cast<int>(get_int(s, "sampling", "dense_scan", c.sampling.dense_scan));
    c.sampling.product_samples =
        static_cast<int>(get_int(s, "sampling", "product_samples", c.sampling.product_samples));
    c.sampling.entropy_bins = static_cast<int>(get_int(s, "sampling", "entropy_bins", c.sampling.entropy_bins));
  }
  if (j.contains("network")) {
    const json& n = j["network"];
    check_keys(n, "network", {"nx", "ny", "cell_size", "cracked"});
    c.network.nx = static_cast<int>(get_int(n, "network", "nx", c.network.nx));
    c.network.ny = static_cast<int>(get_int(n, "network", "ny", c.network.ny));
    c.network.cell_size = get_number(n, "network", "cell_size", c.network.cell_size);
    if (n.contains("cracked")) {
      if (!n["cracked"].is_array()) throw ConfigError("network.cracked", "expected a list of [x, y] cells");
      for (std::size_t i = 0; i < n["cracked"].size(); ++i) {
        const json& v = n["cracked"][i];
        const std::string field = "network.cracked[" + std::to_string(i) + "]";
        if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
          throw ConfigError(field, "expected [x, y] integer cell coordinates");
        c.network.cracked.push_back({v[0].get<int>(), v[1].get<int>()});
      }
    }
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError("output_dir", "expected a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  c.validate();
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const IoError& e) {
    throw ConfigError("config", e.what());
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  return from_json(j, std::filesystem::path(path).parent_path().string().empty()
                          ? "."
                          : std::filesystem::path(path).parent_path().string());
}

void RunConfig::validate() const {
  if (!(mesh.target_edge_length > 0.0)) throw ConfigError("mesh.edge_length", "must be positive");
  if (!(mesh.jitter >= 0.0 && mesh.jitter < 0.3)) throw ConfigError("mesh.jitter", "must lie in [0, 0.3)");
  const std::pair<const char*, double> fluid_fields[] = {
      {"fluid.mu", fluid.mu}, {"fluid.rho", fluid.rho}, {"fluid.g", fluid.g}, {"fluid.gamma", fluid.gamma}};
  for (const auto& [name, v] : fluid_fields)
    if (!(v > 0.0)) throw ConfigError(name, "must be strictly positive");
  if (analyses.empty()) throw ConfigError("analyses", "at least one analysis is required");
  if (analyses.count("superposition") &&
      !(analyses.count("curvature") && analyses.count("gravity") && analyses.count("friction")))
    throw ConfigError("analyses", "superposition requires curvature, gravity and friction");
  if ((analyses.count("network") || analyses.count("entropy")) && !analyses.count("superposition"))
    throw ConfigError("analyses", "entropy and network require superposition");
  if (sampling.dense_scan < 16) throw ConfigError("sampling.dense_scan", "must be at least 16");
  if (sampling.product_samples < 1) throw ConfigError("sampling.product_samples", "must be positive");
  if (sampling.entropy_bins < 2) throw ConfigError("sampling.entropy_bins", "must be at least 2");
  if (network.nx < 1 || network.ny < 1 || network.nx * network.ny < 2)
    throw ConfigError("network", "grid needs at least two cells");
  if (!(network.cell_size > 0.0)) throw ConfigError("network.cell_size", "must be positive");
  for (std::size_t i = 0; i < network.cracked.size(); ++i) {
    const auto& c = network.cracked[i];
    if (c[0] < 0 || c[0] >= network.nx || c[1] < 0 || c[1] >= network.ny)
      throw ConfigError("network.cracked[" + std::to_string(i) + "]", "cell outside the grid");
  }
}

void RunConfig::set_seed(std::uint64_t s) {
  seed = s;
  mesh.seed = s;
}

json RunConfig::to_json() const {
  json j;
  j["surface"]["kind"] = to_string(surface.kind);
  j["surface"]["params"] = json::object();
  for (const auto& [k, v] : surface.params) j["surface"]["params"][k] = v;
  j["surface"]["domain"] = json::array();
  for (const auto& p : surface.domain.vertices()) j["surface"]["domain"].push_back({p.x(), p.y()});
  j["mesh"] = {{"edge_length", mesh.target_edge_length}, {"jitter", mesh.jitter}, {"seed", mesh.seed}};
  j["fluid"] = {{"mu", fluid.mu}, {"rho", fluid.rho}, {"g", fluid.g}, {"gamma", fluid.gamma}};
  j["analyses"] = json::array();
  for (const auto& a : analyses) j["analyses"].push_back(a);
  j["sampling"] = {{"dense_scan", sampling.dense_scan},
                   {"product_samples", sampling.product_samples},
                   {"entropy_bins", sampling.entropy_bins}};
  j["network"] = {{"nx", network.nx}, {"ny", network.ny}, {"cell_size", network.cell_size}};
  j["network"]["cracked"] = json::array();
  for (const auto& c : network.cracked) j["network"]["cracked"].push_back({c[0], c[1]});
  j["seed"] = seed;
  return j;
}

RunResult run_pipeline(const RunConfig& config) {
  config.validate();
  config.fluid.validate();
  RunResult result;
  json& report = result.report;
  report["version"] = "0.1.0";
  report["config"] = config.to_json();

  const Mesh2D mesh = generate_mesh(config.surface, config.mesh);
  const ValidationReport check = validate_mesh(mesh);
  if (!check.ok()) throw AcutenessUnachievable("generated mesh failed validation");
  const LiftedTriangulation tri = lift(mesh, config.surface);
  report["mesh"] = {{"vertices", mesh.vertices.size()},
                    {"triangles", mesh.triangles.size()},
                    {"edges", mesh.edges.size()},
                    {"interior_edges", mesh.num_interior_edges()},
                    {"lifted_area", tri.total_area},
                    {"valid", true}};

  const bool want_curv = config.analyses.count("curvature") > 0;
  const bool want_grav = config.analyses.count("gravity") > 0;
  const bool want_fric = config.analyses.count("friction") > 0;

  std::ostringstream directions;
  directions << "source,x,y,z,probability\n";

  std::optional<CurvatureAnalysis> curv;
  std::optional<GravityAnalysis> grav;
  std::optional<FrictionAnalysis> fric;
  std::optional<FrictionObjective> objective;
  if (want_curv) {
    curv = analyze_curvature(tri, config.fluid);
    report["curvature"] = curv->to_json();
    report["curvature"]["edge_normal_mismatch"] =
        edge_normal_mismatch(tri, apply_V(tri, curv->form.f1));
    append_rows(directions, "curv", curv->distribution.discretize());
  }
  if (want_grav) {
    grav = preferential_grav(tri, config.fluid);
    report["gravity"] = grav->to_json();
    append_rows(directions, "grav", grav->distribution.discretize());
  }
  if (want_fric) {
    MinimizeOptions opt;
    opt.dense_scan = config.sampling.dense_scan;
    objective.emplace(tri, config.fluid);
    fric.emplace();
    fric->minimizers = minimize_piecewise([&](double t) { return (*objective)(t); },
                                          [&](double t) { return objective->derivative(t); },
                                          objective->breakpoints(), opt);
    fric->distribution = preferential_friction(fric->minimizers, tri);
    report["friction"] = fric->to_json();
    append_rows(directions, "friction", fric->distribution.discretize());
  }

  std::optional<GlobalDirectionSpace> global;
  if (config.analyses.count("superposition")) {
    const SuperpositionWeights w = compute_weights(curv->form.lambda1, grav->form.lambda1, fric->minimizers.min_value);
    global = superpose(curv->distribution, grav->distribution, fric->distribution, w,
                       config.sampling.product_samples, config.seed);
    report["superposition"] = global->to_json();
    report["superposition"]["weights"] = {w.p1, w.p2, w.p3};
    std::vector<DirectionAtom> rows;
    for (const auto& s : global->samples) rows.push_back({s.dir, s.probability, 0.0});
    append_rows(directions, "global", rows);
  }
  if (config.analyses.count("entropy")) {
    report["entropy"] = geometric_entropy(*global, config.sampling.entropy_bins).to_json();
  }
  if (config.analyses.count("network")) {
    FissureGrid grid(config.network.nx, config.network.ny, config.network.cell_size);
    if (config.network.cracked.empty()) {
      for (auto& c : grid.cells) c = *global;
    } else {
      for (const auto& c : config.network.cracked) grid.cells[grid.index(c[0], c[1])] = *global;
    }
    const TransmissionMatrix m = build_matrix(grid);
    const StationaryResult st = stationary(m, 1e-12, 10000);
    std::ostringstream mtx;
    m.write_matrix_market(mtx);
    result.network_mtx = mtx.str();
    std::size_t nnz = 0;
    for (const auto& row : m.rows) nnz += row.size();
    report["network"] = {{"nx", grid.nx},
                         {"ny", grid.ny},
                         {"nonzeros", nnz},
                         {"max_row_error", m.max_row_error()},
                         {"stationary", st.pi},
                         {"stationary_converged", st.converged},
                         {"stationary_iterations", st.iterations}};
  }
  result.directions_csv = directions.str();

  // Dissipation profiles over the full master-direction circle.
  std::ostringstream profile;
  profile << "t,U_curv,U_grav,F\n";
  const int n = config.sampling.dense_scan;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    const Eigen::Vector2d b = direction(t);
    profile << fmt(t) << ',' << (curv ? fmt(curv->form(b)) : "") << ',' << (grav ? fmt(grav->form(b)) : "") << ','
            << (objective ? fmt((*objective)(t)) : "") << '\n';
  }
  result.energy_profile_csv = profile.str();
  return result;
}

void write_artifacts(const RunResult& result, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& text) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path.string());
    os << text;
  };
  write("report.json", result.report.dump(2) + "\n");
  write("directions.csv", result.directions_csv);
  write("energy_profile.csv", result.energy_profile_csv);
  if (result.network_mtx) write("network.mtx", *result.network_mtx);
}

json error_object(const std::exception& e) {
  json err;
  err["message"] = e.what();
  err["field"] = nullptr;
  if (const auto* c = dynamic_cast<const ConfigError*>(&e)) {
    err["type"] = c->kind();
    err["field"] = c->field();
  } else if (const auto* f = dynamic_cast<const Error*>(&e)) {
    err["type"] = f->kind();
  } else {
    err["type"] = "InternalError";
  }
  return {{"error", err}};
}

FissureGrid grid_from_json(const json& j) {
  check_keys(j, "", {"nx", "ny", "cell_size", "cells"});
  const long long nx = get_int(j, "", "nx", 1), ny = get_int(j, "", "ny", 1);
  if (nx < 1 || ny < 1) throw ConfigError(nx < 1 ? "nx" : "ny", "must be at least 1");
  const double size = get_number(j, "", "cell_size", 1.0);
  if (!(size > 0.0)) throw ConfigError("cell_size", "must be positive");
  FissureGrid grid(static_cast<int>(nx), static_cast<int>(ny), size);
  if (!j.contains("cells")) return grid;
  if (!j["cells"].is_array()) throw ConfigError("cells", "expected a list");
  for (std::size_t i = 0; i < j["cells"].size(); ++i) {
    const json& c = j["cells"][i];
    const std::string path = "cells[" + std::to_string(i) + "]";
    check_keys(c, path, {"x", "y", "atoms"});
    const long long x = get_int(c, path, "x", -1), y = get_int(c, path, "y", -1);
    if (x < 0 || x >= nx || y < 0 || y >= ny) throw ConfigError(path, "cell outside the grid");
    if (!c.contains("atoms") || !c["atoms"].is_array()) throw ConfigError(path + ".atoms", "expected a list");
    GlobalDirectionSpace space;
    double total = 0.0;
    for (std::size_t a = 0; a < c["atoms"].size(); ++a) {
      const json& atom = c["atoms"][a];
      const std::string apath = path + ".atoms[" + std::to_string(a) + "]";
      check_keys(atom, apath, {"dir", "p"});
      const json& d = atom.contains("dir") ? atom["dir"] : json();
      if (!d.is_array() || d.size() != 3 || !d[0].is_number() || !d[1].is_number() || !d[2].is_number())
        throw ConfigError(apath + ".dir", "expected [x, y, z]");
      const double p = get_number(atom, apath, "p", -1.0);
      if (p < 0.0) throw ConfigError(apath + ".p", "expected a probability");
      Eigen::Vector3d dir(d[0].get<double>(), d[1].get<double>(), d[2].get<double>());
      if (dir.norm() > 0.0) dir.normalize();
      space.samples.push_back({dir, p});
      if (dir.isZero(0.0)) space.zero_mass += p;
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-10) throw ConfigError(path + ".atoms", "probabilities must sum to 1");
    grid.cells[grid.index(static_cast<int>(x), static_cast<int>(y))] = std::move(space);
  }
  return grid;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace fissura
