#pragma once

#include "fissura/mesh.hpp"

#include <array>
#include <vector>

namespace fissura {

/// A planar mesh lifted onto z = zeta(x, y). Immutable after construction.
///
/// Per-(triangle, edge) arrays are indexed like Mesh2D::triangle_edges:
/// slot i of triangle k refers to the edge from vertex i to vertex i + 1.
struct LiftedTriangulation {
  Mesh2D base;
  std::vector<Point3> lifted_vertices;
  std::vector<Point3> normals;              // unit, upward
  std::vector<Eigen::Vector2d> gradients;   // slope (dz/dx, dz/dy) of each lifted plane
  std::vector<Point3> control_points;       // p^K
  std::vector<Point3> transmission_points;  // q^sigma, per edge
  std::vector<double> areas;                // |K^zeta|
  std::vector<std::array<double, 3>> influence_areas;  // |A^zeta(sigma, K)|
  std::vector<std::array<Point3, 3>> edge_normals;     // nu^K_sigma
  double total_area = 0.0;

  std::size_t size() const { return base.triangles.size(); }
};

LiftedTriangulation lift(const Mesh2D& mesh, const HeightFunction& height);
LiftedTriangulation lift(const Mesh2D& mesh, const SurfaceSpec& spec);

}  // namespace fissura
