#pragma once

#include "fissura/surface.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fissura {

inline constexpr int kNoTriangle = -1;

struct MeshEdge {
  std::array<int, 2> v;  // oriented counter-clockwise with respect to `left`
  int left = kNoTriangle;
  int right = kNoTriangle;  // kNoTriangle on the mesh boundary

  bool interior() const { return right != kNoTriangle; }
};

/// Planar triangular mesh with its finite-volume data: circumcenters as
/// control points and edge midpoints as transmission points.
///
/// Triangles are stored counter-clockwise. `triangle_edges[k][i]` is the edge
/// running from vertex i to vertex (i + 1) % 3 of triangle k.
struct Mesh2D {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<MeshEdge> edges;
  std::vector<std::array<int, 3>> triangle_edges;
  std::vector<Point2> circumcenters;
  std::vector<Point2> edge_midpoints;

  std::size_t num_triangles() const { return triangles.size(); }
  std::size_t num_interior_edges() const;
  double triangle_area(int k) const;
  /// The triangle across edge `e` from `k`, or kNoTriangle.
  int neighbor(int k, int e) const;
};

/// Builds the edge table, circumcenters and midpoints. Triangles are
/// reoriented counter-clockwise. Throws InvalidMesh on bad indices,
/// degenerate triangles or non-manifold edges.
Mesh2D make_mesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles);

Point2 circumcenter(const Point2& a, const Point2& b, const Point2& c);

enum class ViolationKind {
  index_out_of_range,
  degenerate_triangle,
  non_acute,
  circumcenter_outside,
  non_orthogonal,
  coincident_control_points,
  non_manifold_edge,
  midpoint_mismatch,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int index;  // triangle or edge id
  double value;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

inline constexpr double kGeometryTol = 1e-9;

/// Checks acuteness, interior circumcenters, orthogonality of control-point
/// segments to shared edges, and midpoint placement.
ValidationReport validate_mesh(const Mesh2D& mesh);

struct MeshOptions {
  double target_edge_length = 0.1;
  double jitter = 0.0;  // fraction of the edge length, in [0, 0.3)
  std::uint64_t seed = 0;
};

/// Offset-column triangulation of the domain's bounding box, clipped to the
/// polygon. Every triangle has one edge parallel to the y axis and an apex
/// in the neighboring column, so all triangles are acute. Boundary vertices
/// close to the domain edge are snapped onto it when that keeps the incident
/// triangles acute; interior vertices are then jittered.
Mesh2D generate_mesh(const SurfaceSpec& spec, const MeshOptions& options);

nlohmann::json mesh_to_json(const Mesh2D& mesh);
Mesh2D mesh_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const ValidationReport& report);

}  // namespace fissura
