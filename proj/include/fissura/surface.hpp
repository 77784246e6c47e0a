#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fissura {

using Point2 = Eigen::Vector2d;
using Point3 = Eigen::Vector3d;

/// Simple polygon with counter-clockwise vertex order.
class Polygon2D {
 public:
  Polygon2D() = default;
  /// Validates simplicity and reorders clockwise input to counter-clockwise.
  explicit Polygon2D(std::vector<Point2> vertices);

  static Polygon2D rectangle(double x0, double y0, double x1, double y1);
  /// Regular n-gon inscribed in the circle of given center and radius.
  static Polygon2D regular(const Point2& center, double radius, int sides);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double area() const;
  /// Closed containment test: points within `tol` of the boundary count as inside.
  bool contains(const Point2& p, double tol = 1e-12) const;
  double distance_to_boundary(const Point2& p) const;
  Point2 closest_boundary_point(const Point2& p) const;
  /// True when the open segment a-b properly crosses a polygon edge.
  bool segment_crosses_boundary(const Point2& a, const Point2& b) const;
  void bounding_box(Point2& lo, Point2& hi) const;

 private:
  std::vector<Point2> vertices_;
};

/// Rectangular grid of height samples, bilinearly interpolated.
struct Heightmap {
  std::vector<double> xs;  // strictly increasing
  std::vector<double> ys;  // strictly increasing
  std::vector<double> z;   // row-major: z[j * xs.size() + i] at (xs[i], ys[j])

  double operator()(double x, double y) const;
  bool covers(const Polygon2D& domain, double tol = 1e-12) const;

  /// CSV: header row of x-coordinates (leading cell ignored), then one row
  /// per y-coordinate: `y, z(x0, y), z(x1, y), ...`.
  static Heightmap parse_csv(const std::string& text);
  static Heightmap load_csv(const std::string& path);
};

enum class SurfaceKind { plane, ridge, paraboloid, sinusoid, heightmap };

std::string to_string(SurfaceKind kind);
SurfaceKind surface_kind_from_string(const std::string& name);

/// Crack surface z = zeta(x, y) over a polygonal domain.
///
///   plane      z = a x + b y + c
///   ridge      z = amplitude * sin(2 pi x / wavelength)
///   paraboloid z = a x^2 + b y^2
///   sinusoid   z = ax sin(2 pi x / wavelength) + ay sin(2 pi y / wavelength)
///   heightmap  bilinear interpolation of sampled heights
struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::plane;
  std::map<std::string, double> params;
  Polygon2D domain;
  std::shared_ptr<const Heightmap> heightmap;

  double param(const std::string& name, double fallback) const;
  double height(const Point2& p) const;
  /// Throws InvalidSurface when the spec cannot be evaluated on its domain.
  void validate() const;

  static SurfaceSpec plane(Polygon2D domain, double a, double b, double c = 0.0);
  static SurfaceSpec ridge(Polygon2D domain, double amplitude, double wavelength);
  static SurfaceSpec paraboloid(Polygon2D domain, double a, double b);
  static SurfaceSpec sinusoid(Polygon2D domain, double ax, double ay, double wavelength = 1.0);
  static SurfaceSpec from_heightmap(Polygon2D domain, Heightmap map);
};

using HeightFunction = std::function<double(const Point2&)>;

}  // namespace fissura
