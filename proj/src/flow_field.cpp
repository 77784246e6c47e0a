#include "fissura/flow_field.hpp"

#include "fissura/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fissura {

void FluidParams::validate() const {
  const auto check = [](double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v))
      throw InvalidFluid(std::string("fluid parameter ") + name + " must be strictly positive");
  };
  check(mu, "mu");
  check(rho, "rho");
  check(g, "g");
  check(gamma, "gamma");
}

ElementMatrix element_matrix(const Eigen::Vector3d& n) {
  if (!(std::abs(n.norm() - 1.0) <= 1e-9) || !(n.z() > 0))
    throw InvalidNormal("element normal must be a unit vector with positive vertical component");
  const double s = 1.0 / (1.0 + n.z());
  ElementMatrix m;
  m << 1.0 - n.x() * n.x() * s, -n.x() * n.y() * s,
       -n.x() * n.y() * s, 1.0 - n.y() * n.y() * s,
       -n.x(), -n.y();
  return m;
}

std::vector<double> gravity_speed_factors(const LiftedTriangulation& tri, const FluidParams& fluid) {
  double z_max = -std::numeric_limits<double>::infinity();
  for (const auto& p : tri.control_points) z_max = std::max(z_max, p.z());
  std::vector<double> s(tri.size());
  for (std::size_t k = 0; k < tri.size(); ++k)
    s[k] = std::sqrt(1.0 + 2.0 * fluid.g * (z_max - tri.control_points[k].z()));
  return s;
}

ElementField apply_V(const LiftedTriangulation& tri, const MasterVelocity& b) {
  ElementField f{FieldKind::curvature_V, {}};
  f.u.reserve(tri.size());
  for (const auto& n : tri.normals) f.u.push_back(element_matrix(n) * b);
  return f;
}

ElementField apply_G(const LiftedTriangulation& tri, const MasterVelocity& b, const FluidParams& fluid) {
  const auto s = gravity_speed_factors(tri, fluid);
  ElementField f{FieldKind::gravity_G, {}};
  f.u.reserve(tri.size());
  for (std::size_t k = 0; k < tri.size(); ++k) f.u.push_back(s[k] * (element_matrix(tri.normals[k]) * b));
  return f;
}

Eigen::Vector3d average(const LiftedTriangulation& tri, const ElementField& field) {
  Eigen::Vector3d m = Eigen::Vector3d::Zero();
  for (std::size_t k = 0; k < tri.size(); ++k) m += (tri.areas[k] / tri.total_area) * field.u[k];
  return m;
}

ElementMatrix average_operator(const LiftedTriangulation& tri, FieldKind kind, const FluidParams& fluid) {
  ElementMatrix m;
  for (int c = 0; c < 2; ++c) {
    const MasterVelocity e = c == 0 ? MasterVelocity(1.0, 0.0) : MasterVelocity(0.0, 1.0);
    const ElementField f = kind == FieldKind::curvature_V ? apply_V(tri, e) : apply_G(tri, e, fluid);
    m.col(c) = average(tri, f);
  }
  return m;
}

double edge_normal_mismatch(const LiftedTriangulation& tri, const ElementField& field) {
  double worst = 0.0;
  const auto& mesh = tri.base;
  for (std::size_t k = 0; k < tri.size(); ++k) {
    for (int i = 0; i < 3; ++i) {
      const int e = mesh.triangle_edges[k][i];
      const int l = mesh.neighbor(static_cast<int>(k), e);
      if (l == kNoTriangle || l < static_cast<int>(k)) continue;
      int j = 0;
      while (mesh.triangle_edges[l][j] != e) ++j;
      // Outflow from K through sigma against inflow into L through sigma.
      const double out_k = tri.edge_normals[k][i].dot(field.u[k]);
      const double in_l = -tri.edge_normals[l][j].dot(field.u[l]);
      const double scale = std::max({field.u[k].norm(), field.u[l].norm(), 1e-300});
      worst = std::max(worst, std::abs(out_k - in_l) / scale);
    }
  }
  return worst;
}

}  // namespace fissura
