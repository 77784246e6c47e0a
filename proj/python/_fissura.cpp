#include "fissura/curvature.hpp"
#include "fissura/errors.hpp"
#include "fissura/friction.hpp"
#include "fissura/gravity.hpp"
#include "fissura/lift.hpp"
#include "fissura/network.hpp"
#include "fissura/pipeline.hpp"
#include "fissura/superposition.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fissura;

namespace {

Eigen::MatrixXd stack3(const std::vector<Eigen::Vector3d>& v) {
  Eigen::MatrixXd m(v.size(), 3);
  for (std::size_t i = 0; i < v.size(); ++i) m.row(i) = v[i].transpose();
  return m;
}

Eigen::MatrixXd stack2(const std::vector<Eigen::Vector2d>& v) {
  Eigen::MatrixXd m(v.size(), 2);
  for (std::size_t i = 0; i < v.size(); ++i) m.row(i) = v[i].transpose();
  return m;
}

Polygon2D polygon(const std::vector<std::array<double, 2>>& pts) {
  if (pts.empty()) return Polygon2D::rectangle(0, 0, 1, 1);
  std::vector<Point2> v;
  for (const auto& p : pts) v.emplace_back(p[0], p[1]);
  return Polygon2D(v);
}

MasterVelocity vec2(const std::array<double, 2>& b) { return {b[0], b[1]}; }

}  // namespace

PYBIND11_MODULE(_fissura, m) {
  m.doc() = "Preferential flow directions on triangulated crack surfaces";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (e.kind() + ": " + e.what()).c_str());
    }
  });

  py::class_<FluidParams>(m, "FluidParams")
      .def(py::init([](double mu, double rho, double g, double gamma) { return FluidParams{mu, rho, g, gamma}; }),
           py::arg("mu") = 1e-3, py::arg("rho") = 1e3, py::arg("g") = 9.81, py::arg("gamma") = 1.0)
      .def_readwrite("mu", &FluidParams::mu)
      .def_readwrite("rho", &FluidParams::rho)
      .def_readwrite("g", &FluidParams::g)
      .def_readwrite("gamma", &FluidParams::gamma);

  py::class_<SurfaceSpec>(m, "SurfaceSpec")
      .def_static(
          "plane", [](double a, double b, double c, const std::vector<std::array<double, 2>>& d) {
            return SurfaceSpec::plane(polygon(d), a, b, c);
          },
          py::arg("a"), py::arg("b"), py::arg("c") = 0.0, py::arg("domain") = std::vector<std::array<double, 2>>{})
      .def_static(
          "ridge", [](double amp, double wl, const std::vector<std::array<double, 2>>& d) {
            return SurfaceSpec::ridge(polygon(d), amp, wl);
          },
          py::arg("amplitude"), py::arg("wavelength"), py::arg("domain") = std::vector<std::array<double, 2>>{})
      .def_static(
          "paraboloid", [](double a, double b, const std::vector<std::array<double, 2>>& d) {
            return SurfaceSpec::paraboloid(polygon(d), a, b);
          },
          py::arg("a"), py::arg("b"), py::arg("domain") = std::vector<std::array<double, 2>>{})
      .def_static(
          "sinusoid", [](double ax, double ay, double wl, const std::vector<std::array<double, 2>>& d) {
            return SurfaceSpec::sinusoid(polygon(d), ax, ay, wl);
          },
          py::arg("ax"), py::arg("ay"), py::arg("wavelength") = 1.0,
          py::arg("domain") = std::vector<std::array<double, 2>>{})
      .def("height", [](const SurfaceSpec& s, double x, double y) { return s.height({x, y}); });

  py::class_<Mesh2D>(m, "Mesh2D")
      .def_property_readonly("vertices", [](const Mesh2D& mesh) { return stack2(mesh.vertices); })
      .def_property_readonly("triangles", [](const Mesh2D& mesh) { return mesh.triangles; })
      .def_property_readonly("circumcenters", [](const Mesh2D& mesh) { return stack2(mesh.circumcenters); })
      .def_property_readonly("num_interior_edges", &Mesh2D::num_interior_edges)
      .def("__len__", &Mesh2D::num_triangles)
      .def("to_json", [](const Mesh2D& mesh) { return mesh_to_json(mesh).dump(); });

  m.def(
      "generate_mesh",
      [](const SurfaceSpec& spec, double edge_length, double jitter, std::uint64_t seed) {
        return generate_mesh(spec, {edge_length, jitter, seed});
      },
      py::arg("spec"), py::arg("edge_length"), py::arg("jitter") = 0.0, py::arg("seed") = 0);
  m.def(
      "make_mesh",
      [](const std::vector<std::array<double, 2>>& v, std::vector<std::array<int, 3>> t) {
        std::vector<Point2> pts;
        for (const auto& p : v) pts.emplace_back(p[0], p[1]);
        return make_mesh(pts, std::move(t));
      },
      py::arg("vertices"), py::arg("triangles"));
  m.def("validate_mesh", [](const Mesh2D& mesh) { return report_to_json(validate_mesh(mesh)).dump(); });

  py::class_<LiftedTriangulation>(m, "LiftedTriangulation")
      .def_property_readonly("normals", [](const LiftedTriangulation& t) { return stack3(t.normals); })
      .def_property_readonly("control_points", [](const LiftedTriangulation& t) { return stack3(t.control_points); })
      .def_property_readonly("areas", [](const LiftedTriangulation& t) { return t.areas; })
      .def_property_readonly("total_area", [](const LiftedTriangulation& t) { return t.total_area; })
      .def("__len__", &LiftedTriangulation::size);

  m.def("lift", py::overload_cast<const Mesh2D&, const SurfaceSpec&>(&lift), py::arg("mesh"), py::arg("spec"));

  m.def("element_matrix", &element_matrix, py::arg("normal"));
  m.def(
      "apply_V", [](const LiftedTriangulation& t, std::array<double, 2> b) { return stack3(apply_V(t, vec2(b)).u); },
      py::arg("tri"), py::arg("b"));
  m.def(
      "apply_G",
      [](const LiftedTriangulation& t, std::array<double, 2> b, const FluidParams& f) {
        return stack3(apply_G(t, vec2(b), f).u);
      },
      py::arg("tri"), py::arg("b"), py::arg("fluid") = FluidParams{});
  m.def(
      "average_V",
      [](const LiftedTriangulation& t, std::array<double, 2> b) { return average(t, apply_V(t, vec2(b))); },
      py::arg("tri"), py::arg("b"));

  m.def(
      "dissipation_curv",
      [](const LiftedTriangulation& t, std::array<double, 2> b, const FluidParams& f) {
        return dissipation_curv(t, f, vec2(b));
      },
      py::arg("tri"), py::arg("b"), py::arg("fluid") = FluidParams{});
  m.def(
      "dissipation_grav",
      [](const LiftedTriangulation& t, std::array<double, 2> b, const FluidParams& f) {
        return dissipation_grav(t, f, vec2(b));
      },
      py::arg("tri"), py::arg("b"), py::arg("fluid") = FluidParams{});
  m.def(
      "external_energy",
      [](const LiftedTriangulation& t, std::array<double, 2> b, const FluidParams& f) {
        return external_energy(t, f, vec2(b));
      },
      py::arg("tri"), py::arg("b"), py::arg("fluid") = FluidParams{});
  m.def(
      "friction_functional",
      [](const LiftedTriangulation& t, std::array<double, 2> b, const FluidParams& f) {
        return friction_functional(t, f, vec2(b));
      },
      py::arg("tri"), py::arg("b"), py::arg("fluid") = FluidParams{});
  m.def("max_chord", &max_chord, py::arg("tri"), py::arg("k"), py::arg("t"));

  m.def(
      "analyze_curvature",
      [](const LiftedTriangulation& t, const FluidParams& f) { return analyze_curvature(t, f).to_json().dump(); },
      py::arg("tri"), py::arg("fluid") = FluidParams{});
  m.def(
      "analyze_gravity",
      [](const LiftedTriangulation& t, const FluidParams& f) { return preferential_grav(t, f).to_json().dump(); },
      py::arg("tri"), py::arg("fluid") = FluidParams{});
  m.def(
      "analyze_friction",
      [](const LiftedTriangulation& t, const FluidParams& f, int dense_scan) {
        MinimizeOptions opt;
        opt.dense_scan = dense_scan;
        return analyze_friction(t, f, opt).to_json().dump();
      },
      py::arg("tri"), py::arg("fluid") = FluidParams{}, py::arg("dense_scan") = 8192);

  m.def(
      "compute_weights",
      [](double a, double b, double c) {
        const SuperpositionWeights w = compute_weights(a, b, c);
        return std::array<double, 3>{w.p1, w.p2, w.p3};
      },
      py::arg("min_curv"), py::arg("min_grav"), py::arg("min_friction"));
  m.def(
      "atomic_entropy",
      [](const std::vector<double>& probabilities) {
        GlobalDirectionSpace s;
        for (double p : probabilities) s.samples.push_back({Eigen::Vector3d::UnitX(), p});
        return *geometric_entropy(s, 2).atomic_entropy;
      },
      py::arg("probabilities"));

  m.def(
      "transmission_matrix",
      [](const std::string& grid_json) {
        const TransmissionMatrix tm = build_matrix(grid_from_json(nlohmann::json::parse(grid_json)));
        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(tm.n, tm.n);
        for (int i = 0; i < tm.n; ++i)
          for (const auto& [j, v] : tm.rows[i]) dense(i, j) = v;
        return dense;
      },
      py::arg("grid_json"));

  m.def(
      "run",
      [](const std::string& config_json, std::optional<std::uint64_t> seed, const std::string& base_dir) {
        RunConfig c = RunConfig::from_json(nlohmann::json::parse(config_json), base_dir);
        if (seed) c.set_seed(*seed);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run_pipeline(c);
        }
        return py::make_tuple(r.report.dump(2) + "\n", r.directions_csv, r.energy_profile_csv,
                              r.network_mtx ? py::object(py::str(*r.network_mtx)) : py::object(py::none()));
      },
      py::arg("config_json"), py::arg("seed") = py::none(), py::arg("base_dir") = ".");
}
