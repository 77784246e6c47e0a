#include "fissura/mesh.hpp"

#include "fissura/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <utility>

namespace fissura {
namespace {

double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const Point2& a, const Point2& b, const Point2& c) {
  return 0.5 * cross(b - a, c - a);
}

/// Cosine of the interior angle at `p` of triangle (p, q, r).
double angle_cosine(const Point2& p, const Point2& q, const Point2& r) {
  const Point2 u = q - p;
  const Point2 v = r - p;
  return u.dot(v) / (u.norm() * v.norm());
}

double max_angle_cosine_margin(const Point2& a, const Point2& b, const Point2& c) {
  return std::min({angle_cosine(a, b, c), angle_cosine(b, c, a), angle_cosine(c, a, b)});
}

}  // namespace

Point2 circumcenter(const Point2& a, const Point2& b, const Point2& c) {
  const Point2 ba = b - a;
  const Point2 ca = c - a;
  const double d = 2.0 * cross(ba, ca);
  const double b2 = ba.squaredNorm();
  const double c2 = ca.squaredNorm();
  return a + Point2((ca.y() * b2 - ba.y() * c2) / d, (ba.x() * c2 - ca.x() * b2) / d);
}

std::size_t Mesh2D::num_interior_edges() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const MeshEdge& e) { return e.interior(); }));
}

double Mesh2D::triangle_area(int k) const {
  const auto& t = triangles[k];
  return signed_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
}

int Mesh2D::neighbor(int k, int e) const {
  const MeshEdge& edge = edges[e];
  if (edge.left == k) return edge.right;
  if (edge.right == k) return edge.left;
  return kNoTriangle;
}

Mesh2D make_mesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles) {
  Mesh2D mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);
  const int nv = static_cast<int>(mesh.vertices.size());

  std::map<std::pair<int, int>, int> edge_ids;
  mesh.triangle_edges.resize(mesh.triangles.size());
  mesh.circumcenters.resize(mesh.triangles.size());
  for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
    auto& t = mesh.triangles[k];
    for (int v : t) {
      if (v < 0 || v >= nv)
        throw InvalidMesh("triangle " + std::to_string(k) + " references vertex " + std::to_string(v));
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw InvalidMesh("triangle " + std::to_string(k) + " repeats a vertex");
    const Point2 &a = mesh.vertices[t[0]], &b = mesh.vertices[t[1]], &c = mesh.vertices[t[2]];
    const double area = signed_area(a, b, c);
    const double scale = std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
    if (!(std::abs(area) > 1e-14 * scale))
      throw InvalidMesh("triangle " + std::to_string(k) + " is degenerate");
    if (area < 0) std::swap(t[1], t[2]);
    mesh.circumcenters[k] = circumcenter(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);

    for (int i = 0; i < 3; ++i) {
      const int v0 = t[i];
      const int v1 = t[(i + 1) % 3];
      const auto key = std::minmax(v0, v1);
      auto it = edge_ids.find(key);
      if (it == edge_ids.end()) {
        const int id = static_cast<int>(mesh.edges.size());
        mesh.edges.push_back(MeshEdge{{v0, v1}, static_cast<int>(k), kNoTriangle});
        edge_ids.emplace(key, id);
        mesh.triangle_edges[k][i] = id;
      } else {
        MeshEdge& e = mesh.edges[it->second];
        if (e.right != kNoTriangle || e.v[0] != v1)
          throw InvalidMesh("edge (" + std::to_string(v0) + ", " + std::to_string(v1) +
                            ") is shared inconsistently or by more than two triangles");
        e.right = static_cast<int>(k);
        mesh.triangle_edges[k][i] = it->second;
      }
    }
  }
  mesh.edge_midpoints.reserve(mesh.edges.size());
  for (const auto& e : mesh.edges)
    mesh.edge_midpoints.push_back(0.5 * (mesh.vertices[e.v[0]] + mesh.vertices[e.v[1]]));
  return mesh;
}

// ---------------------------------------------------------------------------

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::index_out_of_range: return "index_out_of_range";
    case ViolationKind::degenerate_triangle: return "degenerate_triangle";
    case ViolationKind::non_acute: return "non_acute";
    case ViolationKind::circumcenter_outside: return "circumcenter_outside";
    case ViolationKind::non_orthogonal: return "non_orthogonal";
    case ViolationKind::coincident_control_points: return "coincident_control_points";
    case ViolationKind::non_manifold_edge: return "non_manifold_edge";
    case ViolationKind::midpoint_mismatch: return "midpoint_mismatch";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate_mesh(const Mesh2D& mesh) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, int index, double value, std::string msg) {
    report.violations.push_back({kind, index, value, std::move(msg)});
  };
  const int nv = static_cast<int>(mesh.vertices.size());
  const int nt = static_cast<int>(mesh.triangles.size());
  if (mesh.circumcenters.size() != mesh.triangles.size() ||
      mesh.triangle_edges.size() != mesh.triangles.size() ||
      mesh.edge_midpoints.size() != mesh.edges.size()) {
    add(ViolationKind::index_out_of_range, -1, 0.0, "derived arrays have inconsistent sizes");
    return report;
  }

  std::vector<bool> usable(nt, true);
  for (int k = 0; k < nt; ++k) {
    const auto& t = mesh.triangles[k];
    if (std::any_of(t.begin(), t.end(), [nv](int v) { return v < 0 || v >= nv; })) {
      add(ViolationKind::index_out_of_range, k, 0.0, "triangle references a missing vertex");
      usable[k] = false;
      continue;
    }
    const Point2 &a = mesh.vertices[t[0]], &b = mesh.vertices[t[1]], &c = mesh.vertices[t[2]];
    const double area = signed_area(a, b, c);
    const double scale = std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
    if (!(std::abs(area) > 1e-14 * scale)) {
      add(ViolationKind::degenerate_triangle, k, area, "triangle has (near) zero area");
      usable[k] = false;
      continue;
    }
    const std::array<double, 3> cosines{angle_cosine(a, b, c), angle_cosine(b, c, a),
                                        angle_cosine(c, a, b)};
    const double worst = *std::min_element(cosines.begin(), cosines.end());
    if (worst <= kGeometryTol)
      add(ViolationKind::non_acute, k, std::acos(std::clamp(worst, -1.0, 1.0)),
          "triangle has an interior angle of at least pi/2");

    // Strict interior test through barycentric coordinates of x_K.
    const Point2& x = mesh.circumcenters[k];
    const double l0 = signed_area(x, b, c) / area;
    const double l1 = signed_area(a, x, c) / area;
    const double l2 = signed_area(a, b, x) / area;
    const double lmin = std::min({l0, l1, l2});
    if (lmin <= kGeometryTol)
      add(ViolationKind::circumcenter_outside, k, lmin, "control point is not strictly inside the triangle");
  }

  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const MeshEdge& edge = mesh.edges[e];
    const int id = static_cast<int>(e);
    if (edge.v[0] < 0 || edge.v[0] >= nv || edge.v[1] < 0 || edge.v[1] >= nv ||
        edge.left < 0 || edge.left >= nt || edge.right >= nt) {
      add(ViolationKind::index_out_of_range, id, 0.0, "edge references a missing vertex or triangle");
      continue;
    }
    const Point2& p0 = mesh.vertices[edge.v[0]];
    const Point2& p1 = mesh.vertices[edge.v[1]];
    const Point2 tangent = p1 - p0;
    const double len = tangent.norm();
    if ((mesh.edge_midpoints[e] - 0.5 * (p0 + p1)).norm() > kGeometryTol * len)
      add(ViolationKind::midpoint_mismatch, id, (mesh.edge_midpoints[e] - 0.5 * (p0 + p1)).norm(),
          "transmission point is not the edge midpoint");

    const auto shares_edge = [&](int k) {
      const auto& t = mesh.triangles[k];
      const bool has0 = std::find(t.begin(), t.end(), edge.v[0]) != t.end();
      const bool has1 = std::find(t.begin(), t.end(), edge.v[1]) != t.end();
      return has0 && has1;
    };
    if (!shares_edge(edge.left) || (edge.interior() && !shares_edge(edge.right))) {
      add(ViolationKind::non_manifold_edge, id, 0.0, "adjacent triangles do not share both edge vertices");
      continue;
    }
    if (!edge.interior() || !usable[edge.left] || !usable[edge.right]) continue;

    const Point2 link = mesh.circumcenters[edge.left] - mesh.circumcenters[edge.right];
    const double link_len = link.norm();
    if (link_len <= kGeometryTol * len) {
      add(ViolationKind::coincident_control_points, id, link_len, "control points of K and L coincide");
      continue;
    }
    const double cosine = std::abs(link.dot(tangent)) / (link_len * len);
    if (cosine >= kGeometryTol)
      add(ViolationKind::non_orthogonal, id, cosine, "segment x_K x_L is not orthogonal to the edge");
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct Lattice {
  Point2 lo, hi;
  int nx = 0, ny = 0;
  double hx = 0.0, hy = 0.0;

  // Columns alternate between y = j*hy and y = (j + 1/2)*hy.
  Point2 point(int i, int j) const {
    const double x = i == nx ? hi.x() : lo.x() + i * hx;
    const double off = (i % 2 == 0) ? 0.0 : 0.5;
    const double yj = j + off;
    const double y = yj == ny ? hi.y() : lo.y() + yj * hy;
    return {x, y};
  }
};

bool triangle_inside(const Polygon2D& domain, const Point2& a, const Point2& b, const Point2& c,
                     double tol) {
  if (!domain.contains(a, tol) || !domain.contains(b, tol) || !domain.contains(c, tol)) return false;
  if (!domain.contains((a + b + c) / 3.0, tol)) return false;
  return !domain.segment_crosses_boundary(a, b) && !domain.segment_crosses_boundary(b, c) &&
         !domain.segment_crosses_boundary(c, a);
}

}  // namespace

Mesh2D generate_mesh(const SurfaceSpec& spec, const MeshOptions& options) {
  const Polygon2D& domain = spec.domain;
  if (domain.size() < 3) throw InvalidPolygon("domain polygon is missing");
  if (!(options.target_edge_length > 0)) throw DomainTooSmall("target edge length must be positive");
  if (!(options.jitter >= 0.0 && options.jitter < 0.3))
    throw AcutenessUnachievable("jitter must lie in [0, 0.3)");
  if (!(domain.area() > 0)) throw DomainTooSmall("domain polygon has no area");

  Lattice lat;
  domain.bounding_box(lat.lo, lat.hi);
  const double width = lat.hi.x() - lat.lo.x();
  const double height = lat.hi.y() - lat.lo.y();
  const double sqrt3_2 = std::sqrt(3.0) / 2.0;
  lat.nx = static_cast<int>(std::floor(width / (options.target_edge_length * sqrt3_2) + 1e-9));
  if (lat.nx < 1) throw DomainTooSmall("no triangle of the requested size fits the domain");
  lat.hx = width / lat.nx;
  lat.ny = static_cast<int>(std::lround(height / (lat.hx / sqrt3_2)));
  if (lat.ny < 1) throw DomainTooSmall("no triangle of the requested size fits the domain");
  lat.hy = height / lat.ny;
  const double hmin = std::min(lat.hx, lat.hy);
  const double tol = 1e-9 * std::max(width, height);

  std::map<std::pair<int, int>, int> ids;
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  const auto vid = [&](int i, int j) {
    auto [it, inserted] = ids.try_emplace({i, j}, static_cast<int>(vertices.size()));
    if (inserted) vertices.push_back(lat.point(i, j));
    return it->second;
  };
  for (int i = 0; i < lat.nx; ++i) {
    for (int j = -1; j < lat.ny; ++j) {
      std::array<std::array<std::pair<int, int>, 3>, 2> cand;
      if (i % 2 == 0) {
        cand[0] = {{{i, j}, {i + 1, j}, {i, j + 1}}};
        cand[1] = {{{i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
      } else {
        cand[0] = {{{i + 1, j}, {i + 1, j + 1}, {i, j}}};
        cand[1] = {{{i, j}, {i + 1, j + 1}, {i, j + 1}}};
      }
      for (const auto& tri : cand) {
        const Point2 a = lat.point(tri[0].first, tri[0].second);
        const Point2 b = lat.point(tri[1].first, tri[1].second);
        const Point2 c = lat.point(tri[2].first, tri[2].second);
        if (!triangle_inside(domain, a, b, c, tol)) continue;
        triangles.push_back({vid(tri[0].first, tri[0].second), vid(tri[1].first, tri[1].second),
                             vid(tri[2].first, tri[2].second)});
      }
    }
  }
  if (triangles.empty()) throw DomainTooSmall("no triangle of the requested size fits the domain");

  Mesh2D base = make_mesh(vertices, triangles);
  std::vector<Point2> pos = base.vertices;

  std::vector<std::vector<int>> incident(pos.size());
  for (std::size_t k = 0; k < base.triangles.size(); ++k)
    for (int v : base.triangles[k]) incident[v].push_back(static_cast<int>(k));
  std::vector<bool> on_boundary(pos.size(), false);
  for (const auto& e : base.edges) {
    if (!e.interior()) on_boundary[e.v[0]] = on_boundary[e.v[1]] = true;
  }

  constexpr double kAcuteMargin = 1e-6;
  const auto triangle_ok = [&](int k) {
    const auto& t = base.triangles[k];
    const Point2 &a = pos[t[0]], &b = pos[t[1]], &c = pos[t[2]];
    return signed_area(a, b, c) > 0 && max_angle_cosine_margin(a, b, c) > kAcuteMargin;
  };

  // Snap boundary vertices onto the domain boundary where the incident
  // triangles stay acute and inside the domain.
  for (std::size_t v = 0; v < pos.size(); ++v) {
    if (!on_boundary[v]) continue;
    const double d = domain.distance_to_boundary(pos[v]);
    if (d <= tol || d > 0.25 * hmin) continue;
    const Point2 old = pos[v];
    pos[v] = domain.closest_boundary_point(old);
    const bool ok = std::all_of(incident[v].begin(), incident[v].end(), [&](int k) {
      const auto& t = base.triangles[k];
      return triangle_ok(k) && triangle_inside(domain, pos[t[0]], pos[t[1]], pos[t[2]], tol);
    });
    if (!ok) pos[v] = old;
  }
  const std::vector<Point2> anchored = pos;

  if (options.jitter > 0.0) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double amp = options.jitter * hmin;
    for (std::size_t v = 0; v < pos.size(); ++v) {
      const double dx = unit(rng);
      const double dy = unit(rng);
      if (on_boundary[v]) continue;
      const Point2 moved = pos[v] + amp * Point2(dx, dy);
      if (domain.contains(moved, -tol)) pos[v] = moved;
    }
    // Restore vertices of offending triangles until every triangle is acute.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = 0; k < base.triangles.size(); ++k) {
        if (triangle_ok(static_cast<int>(k))) continue;
        for (int v : base.triangles[k]) {
          if (pos[v] != anchored[v]) {
            pos[v] = anchored[v];
            changed = true;
          }
        }
      }
    }
  }

  Mesh2D mesh = make_mesh(std::move(pos), base.triangles);
  const ValidationReport report = validate_mesh(mesh);
  if (!report.ok())
    throw AcutenessUnachievable("generated mesh fails validation: " + report.violations.front().message);
  return mesh;
}

// ---------------------------------------------------------------------------

nlohmann::json mesh_to_json(const Mesh2D& mesh) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : mesh.vertices) j["vertices"].push_back({v.x(), v.y()});
  j["triangles"] = nlohmann::json::array();
  for (const auto& t : mesh.triangles) j["triangles"].push_back({t[0], t[1], t[2]});
  return j;
}

Mesh2D mesh_from_json(const nlohmann::json& j) {
  try {
    std::vector<Point2> vertices;
    for (const auto& v : j.at("vertices")) {
      if (v.size() != 2) throw InvalidMesh("vertex entries must be [x, y]");
      vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    }
    std::vector<std::array<int, 3>> triangles;
    for (const auto& t : j.at("triangles")) {
      if (t.size() != 3) throw InvalidMesh("triangle entries must be [i, j, k]");
      triangles.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    }
    Mesh2D mesh = make_mesh(std::move(vertices), std::move(triangles));
    // Optional explicit control points replace the computed circumcenters.
    if (j.contains("circumcenters")) {
      const auto& cc = j.at("circumcenters");
      if (cc.size() != mesh.triangles.size())
        throw InvalidMesh("circumcenters must have one entry per triangle");
      for (std::size_t k = 0; k < cc.size(); ++k)
        mesh.circumcenters[k] = Point2(cc[k].at(0).get<double>(), cc[k].at(1).get<double>());
    }
    return mesh;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidMesh(std::string("malformed mesh JSON: ") + e.what());
  }
}

nlohmann::json report_to_json(const ValidationReport& report) {
  nlohmann::json j;
  j["ok"] = report.ok();
  j["violations"] = nlohmann::json::array();
  for (const auto& v : report.violations)
    j["violations"].push_back(
        {{"kind", to_string(v.kind)}, {"index", v.index}, {"value", v.value}, {"message", v.message}});
  return j;
}

}  // namespace fissura
