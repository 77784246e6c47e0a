#include "fissura/curvature.hpp"

#include "fissura/errors.hpp"
#include "fissura/parallel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fissura {

namespace {

int edge_slot(const Mesh2D& mesh, int k, int e) {
  for (int i = 0; i < 3; ++i)
    if (mesh.triangle_edges[k][i] == e) return i;
  throw InvalidMesh("edge " + std::to_string(e) + " is not on triangle " + std::to_string(k));
}

}  // namespace

EdgeStrain edge_strain(const LiftedTriangulation& tri, const ElementField& field, int edge) {
  const Mesh2D& mesh = tri.base;
  if (edge < 0 || edge >= static_cast<int>(mesh.edges.size()))
    throw BoundaryEdge("edge " + std::to_string(edge) + " out of range");
  const MeshEdge& e = mesh.edges[edge];
  if (!e.interior()) throw BoundaryEdge("edge " + std::to_string(edge) + " lies on the mesh boundary");

  const Eigen::Vector3d du = field.u[e.left] - field.u[e.right];
  const Eigen::Vector3d dp = tri.control_points[e.left] - tri.control_points[e.right];
  const double cutoff = kQuotientTol * dp.norm();

  EdgeStrain s;
  s.edge = edge;
  Eigen::Matrix3d q;  // q(k, l) = du_k / dp_l
  for (int l = 0; l < 3; ++l) {
    const bool drop = std::abs(dp(l)) < cutoff || dp(l) == 0.0;
    for (int k = 0; k < 3; ++k) q(k, l) = drop ? 0.0 : du(k) / dp(l);
    if (drop) s.dropped_quotients += 3;
  }
  for (int k = 0; k < 3; ++k)
    for (int l = k; l < 3; ++l) {
      const double v = 0.5 * q(k, l) + 0.5 * q(l, k);
      s.tensor(k, l) = v;
      s.tensor(l, k) = v;
    }
  return s;
}

Dissipation dissipation(const LiftedTriangulation& tri, const ElementField& field, const FluidParams& fluid) {
  const Mesh2D& mesh = tri.base;
  const std::size_t ne = mesh.edges.size();
  std::vector<double> contrib(ne, 0.0);
  std::vector<int> dropped(ne, 0);
  parallel_for(ne, [&](std::size_t i) {
    const MeshEdge& e = mesh.edges[i];
    if (!e.interior()) return;
    const EdgeStrain s = edge_strain(tri, field, static_cast<int>(i));
    const double weight = tri.influence_areas[e.left][edge_slot(mesh, e.left, static_cast<int>(i))] +
                          tri.influence_areas[e.right][edge_slot(mesh, e.right, static_cast<int>(i))];
    contrib[i] = weight * s.tensor.cwiseProduct(s.tensor).sum();
    dropped[i] = s.dropped_quotients;
  });
  Dissipation d;
  for (std::size_t i = 0; i < ne; ++i) {
    d.value += contrib[i];
    d.dropped_quotients += dropped[i];
  }
  d.value *= 2.0 * fluid.mu / fluid.rho;
  return d;
}

double dissipation_curv(const LiftedTriangulation& tri, const FluidParams& fluid, const MasterVelocity& b) {
  return dissipation(tri, apply_V(tri, b), fluid).value;
}

EnergyForm assemble_form(const LiftedTriangulation& tri, const FluidParams& fluid, FieldKind kind,
                         int* dropped_quotients) {
  auto field = [&](const MasterVelocity& b) {
    return kind == FieldKind::curvature_V ? apply_V(tri, b) : apply_G(tri, b, fluid);
  };
  const Dissipation ui = dissipation(tri, field({1.0, 0.0}), fluid);
  const Dissipation uj = dissipation(tri, field({0.0, 1.0}), fluid);
  const Dissipation uij = dissipation(tri, field({1.0, 1.0}), fluid);
  if (dropped_quotients) *dropped_quotients = ui.dropped_quotients;
  return EnergyForm::from_polarization(ui.value, uj.value, uij.value);
}

EnergyForm assemble_form_curv(const LiftedTriangulation& tri, const FluidParams& fluid, int* dropped_quotients) {
  return assemble_form(tri, fluid, FieldKind::curvature_V, dropped_quotients);
}

DirectionDistribution preferential_curv(const EnergyForm& form, const LiftedTriangulation& tri) {
  const ElementMatrix map = average_operator(tri, FieldKind::curvature_V);
  if (form.degenerate())
    return DirectionDistribution::uniform_on_arcs({{0.0, 2.0 * std::numbers::pi}}, map);
  const double t = std::atan2(form.f1.y(), form.f1.x());
  return DirectionDistribution::atomic({
      {push_direction(map, t), 0.5, wrap_angle(t)},
      {push_direction(map, t + std::numbers::pi), 0.5, wrap_angle(t + std::numbers::pi)},
  });
}

nlohmann::json CurvatureAnalysis::to_json() const {
  nlohmann::json j = form.to_json();
  j["dropped_quotients"] = dropped_quotients;
  j["degenerate"] = form.degenerate();
  j["distribution"] = distribution.to_json();
  return j;
}

CurvatureAnalysis analyze_curvature(const LiftedTriangulation& tri, const FluidParams& fluid) {
  CurvatureAnalysis a;
  a.form = assemble_form_curv(tri, fluid, &a.dropped_quotients);
  a.distribution = preferential_curv(a.form, tri);
  return a;
}

}  // namespace fissura
