#include "fissura/surface.hpp"

#include "fissura/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fissura {
namespace {

double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

double orient(const Point2& a, const Point2& b, const Point2& c) { return cross(b - a, c - a); }

bool segments_properly_intersect(const Point2& a, const Point2& b, const Point2& c,
                                 const Point2& d) {
  const double scale = std::max({(b - a).norm(), (d - c).norm(), 1e-300});
  const double eps = 1e-12 * scale * scale;
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  return ((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps)) &&
         ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps));
}

Point2 closest_on_segment(const Point2& p, const Point2& a, const Point2& b) {
  const Point2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + s * ab;
}

}  // namespace

Polygon2D::Polygon2D(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw InvalidPolygon("polygon needs at least 3 vertices");
  for (const auto& v : vertices_) {
    if (!std::isfinite(v.x()) || !std::isfinite(v.y()))
      throw InvalidPolygon("polygon vertex is not finite");
  }
  double signed_area = 0.0;
  for (std::size_t i = 0; i < n; ++i) signed_area += cross(vertices_[i], vertices_[(i + 1) % n]);
  if (std::abs(signed_area) < 1e-300) throw InvalidPolygon("polygon has zero area");
  if (signed_area < 0) std::reverse(vertices_.begin(), vertices_.end());

  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[(i + 1) % n];
    if ((b - a).norm() == 0.0) throw InvalidPolygon("polygon has repeated vertices");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_properly_intersect(a, b, vertices_[j], vertices_[(j + 1) % n]))
        throw InvalidPolygon("polygon is self-intersecting");
    }
  }
}

Polygon2D Polygon2D::rectangle(double x0, double y0, double x1, double y1) {
  return Polygon2D({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

Polygon2D Polygon2D::regular(const Point2& center, double radius, int sides) {
  std::vector<Point2> pts;
  for (int i = 0; i < sides; ++i) {
    const double a = 2.0 * std::numbers::pi * i / sides;
    pts.emplace_back(center + radius * Point2(std::cos(a), std::sin(a)));
  }
  return Polygon2D(std::move(pts));
}

double Polygon2D::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    a += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  return 0.5 * a;
}

double Polygon2D::distance_to_boundary(const Point2& p) const {
  return (closest_boundary_point(p) - p).norm();
}

Point2 Polygon2D::closest_boundary_point(const Point2& p) const {
  Point2 best = vertices_.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point2 c = closest_on_segment(p, vertices_[i], vertices_[(i + 1) % vertices_.size()]);
    const double d = (c - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

bool Polygon2D::contains(const Point2& p, double tol) const {
  if (distance_to_boundary(p) <= tol) return true;
  bool inside = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

bool Polygon2D::segment_crosses_boundary(const Point2& a, const Point2& b) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (segments_properly_intersect(a, b, vertices_[i], vertices_[(i + 1) % vertices_.size()]))
      return true;
  }
  return false;
}

void Polygon2D::bounding_box(Point2& lo, Point2& hi) const {
  lo = hi = vertices_.front();
  for (const auto& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
}

// ---------------------------------------------------------------------------

double Heightmap::operator()(double x, double y) const {
  const auto locate = [](const std::vector<double>& axis, double v, std::size_t& i, double& s) {
    if (axis.size() == 1) {
      i = 0;
      s = 0.0;
      return;
    }
    v = std::clamp(v, axis.front(), axis.back());
    auto it = std::upper_bound(axis.begin(), axis.end(), v);
    i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - axis.begin()) - 1));
    i = std::min(i, axis.size() - 2);
    s = (v - axis[i]) / (axis[i + 1] - axis[i]);
  };
  std::size_t i = 0, j = 0;
  double sx = 0.0, sy = 0.0;
  locate(xs, x, i, sx);
  locate(ys, y, j, sy);
  const std::size_t nx = xs.size();
  const auto at = [&](std::size_t ii, std::size_t jj) {
    return z[std::min(jj, ys.size() - 1) * nx + std::min(ii, nx - 1)];
  };
  const double z00 = at(i, j), z10 = at(i + 1, j), z01 = at(i, j + 1), z11 = at(i + 1, j + 1);
  return (1 - sx) * (1 - sy) * z00 + sx * (1 - sy) * z10 + (1 - sx) * sy * z01 + sx * sy * z11;
}

bool Heightmap::covers(const Polygon2D& domain, double tol) const {
  if (xs.empty() || ys.empty()) return false;
  Point2 lo, hi;
  domain.bounding_box(lo, hi);
  return xs.front() <= lo.x() + tol && xs.back() >= hi.x() - tol && ys.front() <= lo.y() + tol &&
         ys.back() >= hi.y() - tol;
}

Heightmap Heightmap::parse_csv(const std::string& text) {
  const auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  const auto number = [](const std::string& s, const char* what) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      return v;
    } catch (const std::exception&) {
      throw InvalidSurface(std::string("heightmap: cannot parse ") + what + " '" + s + "'");
    }
  };

  Heightmap map;
  std::stringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto cells = split(line);
    if (header) {
      for (std::size_t i = 1; i < cells.size(); ++i) map.xs.push_back(number(cells[i], "x coordinate"));
      header = false;
      continue;
    }
    if (cells.size() != map.xs.size() + 1)
      throw InvalidSurface("heightmap: row has " + std::to_string(cells.size()) +
                           " cells, expected " + std::to_string(map.xs.size() + 1));
    map.ys.push_back(number(cells[0], "y coordinate"));
    for (std::size_t i = 1; i < cells.size(); ++i) map.z.push_back(number(cells[i], "height"));
  }
  if (map.xs.empty() || map.ys.empty()) throw InvalidSurface("heightmap: empty grid");
  const auto increasing = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!increasing(map.xs) || !increasing(map.ys))
    throw InvalidSurface("heightmap: coordinates must be strictly increasing");
  return map;
}

Heightmap Heightmap::load_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open heightmap file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_csv(buf.str());
}

// ---------------------------------------------------------------------------

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::plane: return "plane";
    case SurfaceKind::ridge: return "ridge";
    case SurfaceKind::paraboloid: return "paraboloid";
    case SurfaceKind::sinusoid: return "sinusoid";
    case SurfaceKind::heightmap: return "heightmap";
  }
  return "plane";
}

SurfaceKind surface_kind_from_string(const std::string& name) {
  for (auto k : {SurfaceKind::plane, SurfaceKind::ridge, SurfaceKind::paraboloid,
                 SurfaceKind::sinusoid, SurfaceKind::heightmap}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidSurface("unknown surface kind '" + name + "'");
}

double SurfaceSpec::param(const std::string& name, double fallback) const {
  auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

double SurfaceSpec::height(const Point2& p) const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  switch (kind) {
    case SurfaceKind::plane:
      return param("a", 0.0) * p.x() + param("b", 0.0) * p.y() + param("c", 0.0);
    case SurfaceKind::ridge:
      return param("amplitude", 0.0) * std::sin(two_pi * p.x() / param("wavelength", 1.0));
    case SurfaceKind::paraboloid:
      return param("a", 0.0) * p.x() * p.x() + param("b", 0.0) * p.y() * p.y();
    case SurfaceKind::sinusoid: {
      const double w = param("wavelength", 1.0);
      return param("ax", 0.0) * std::sin(two_pi * p.x() / w) +
             param("ay", 0.0) * std::sin(two_pi * p.y() / w);
    }
    case SurfaceKind::heightmap:
      return (*heightmap)(p.x(), p.y());
  }
  return 0.0;
}

void SurfaceSpec::validate() const {
  if (domain.size() < 3) throw InvalidSurface("surface domain polygon is missing");
  for (const auto& [name, value] : params) {
    if (!std::isfinite(value)) throw InvalidSurface("surface parameter '" + name + "' is not finite");
  }
  if ((kind == SurfaceKind::ridge || kind == SurfaceKind::sinusoid) && !(param("wavelength", 1.0) > 0))
    throw InvalidSurface("surface wavelength must be positive");
  if (kind == SurfaceKind::heightmap) {
    if (!heightmap) throw InvalidSurface("heightmap surface without samples");
    if (!heightmap->covers(domain)) throw InvalidSurface("heightmap grid does not cover the domain");
  }
}

SurfaceSpec SurfaceSpec::plane(Polygon2D domain, double a, double b, double c) {
  return {SurfaceKind::plane, {{"a", a}, {"b", b}, {"c", c}}, std::move(domain), nullptr};
}

SurfaceSpec SurfaceSpec::ridge(Polygon2D domain, double amplitude, double wavelength) {
  return {SurfaceKind::ridge, {{"amplitude", amplitude}, {"wavelength", wavelength}},
          std::move(domain), nullptr};
}

SurfaceSpec SurfaceSpec::paraboloid(Polygon2D domain, double a, double b) {
  return {SurfaceKind::paraboloid, {{"a", a}, {"b", b}}, std::move(domain), nullptr};
}

SurfaceSpec SurfaceSpec::sinusoid(Polygon2D domain, double ax, double ay, double wavelength) {
  return {SurfaceKind::sinusoid, {{"ax", ax}, {"ay", ay}, {"wavelength", wavelength}},
          std::move(domain), nullptr};
}

SurfaceSpec SurfaceSpec::from_heightmap(Polygon2D domain, Heightmap map) {
  SurfaceSpec s{SurfaceKind::heightmap, {}, std::move(domain),
                std::make_shared<const Heightmap>(std::move(map))};
  s.validate();
  return s;
}

}  // namespace fissura
