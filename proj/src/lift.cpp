#include "fissura/lift.hpp"

#include <cmath>

namespace fissura {

LiftedTriangulation lift(const Mesh2D& mesh, const HeightFunction& height) {
  LiftedTriangulation tri;
  tri.base = mesh;
  const std::size_t nt = mesh.triangles.size();

  tri.lifted_vertices.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) tri.lifted_vertices.emplace_back(v.x(), v.y(), height(v));

  tri.transmission_points.reserve(mesh.edges.size());
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto& edge = mesh.edges[e];
    const double z = 0.5 * (tri.lifted_vertices[edge.v[0]].z() + tri.lifted_vertices[edge.v[1]].z());
    tri.transmission_points.emplace_back(mesh.edge_midpoints[e].x(), mesh.edge_midpoints[e].y(), z);
  }

  tri.normals.resize(nt);
  tri.gradients.resize(nt);
  tri.control_points.resize(nt);
  tri.areas.resize(nt);
  tri.influence_areas.resize(nt);
  tri.edge_normals.resize(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    const auto& t = mesh.triangles[k];
    const Point3& a = tri.lifted_vertices[t[0]];
    const Point3& b = tri.lifted_vertices[t[1]];
    const Point3& c = tri.lifted_vertices[t[2]];

    // Plane z = z_a + gx (x - x_a) + gy (y - y_a) through the three lifted vertices.
    const double bx = b.x() - a.x(), by = b.y() - a.y(), bz = b.z() - a.z();
    const double cx = c.x() - a.x(), cy = c.y() - a.y(), cz = c.z() - a.z();
    const double det = bx * cy - cx * by;
    const double gx = (bz * cy - cz * by) / det;
    const double gy = (bx * cz - cx * bz) / det;
    tri.gradients[k] = Eigen::Vector2d(gx, gy);
    tri.normals[k] = Point3(-gx, -gy, 1.0) / std::sqrt(1.0 + gx * gx + gy * gy);

    // p^K: barycentric interpolation of x_K inside the lifted plane.
    const Point2& x = mesh.circumcenters[k];
    const Point2 pa = mesh.vertices[t[0]], pb = mesh.vertices[t[1]], pc = mesh.vertices[t[2]];
    const auto cross2 = [](const Point2& u, const Point2& v) { return u.x() * v.y() - u.y() * v.x(); };
    const double l1 = cross2(x - pa, pc - pa) / cross2(pb - pa, pc - pa);
    const double l2 = cross2(pb - pa, x - pa) / cross2(pb - pa, pc - pa);
    const double l0 = 1.0 - l1 - l2;
    tri.control_points[k] = Point3(x.x(), x.y(), l0 * a.z() + l1 * b.z() + l2 * c.z());

    tri.areas[k] = 0.5 * (b - a).cross(c - a).norm();
    const std::array<const Point3*, 3> corner{&a, &b, &c};
    for (int i = 0; i < 3; ++i) {
      const Point3& p = *corner[i];
      const Point3& q = *corner[(i + 1) % 3];
      tri.influence_areas[k][i] = 0.5 * (p - tri.control_points[k]).cross(q - tri.control_points[k]).norm();
      tri.edge_normals[k][i] = (q - p).cross(tri.normals[k]).normalized();
    }
    tri.total_area += tri.areas[k];
  }
  return tri;
}

LiftedTriangulation lift(const Mesh2D& mesh, const SurfaceSpec& spec) {
  return lift(mesh, [&spec](const Point2& p) { return spec.height(p); });
}

}  // namespace fissura
