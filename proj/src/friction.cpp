#include "fissura/friction.hpp"

#include "fissura/errors.hpp"
#include "fissura/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fissura {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double t) {
  double r = std::fmod(t, kPi);
  if (r < 0) r += kPi;
  if (r >= kPi) r = 0.0;
  return r;
}

double cross2(const Point2& u, const Point2& v) { return u.x() * v.y() - u.y() * v.x(); }

struct Sample {
  double t;
  double f;
  bool breakpoint;
};

}  // namespace

double planar_chord(const Point2& a, const Point2& b, const Point2& c, double t) {
  const Eigen::Vector2d perp(-std::sin(t), std::cos(t));
  const double pa = a.dot(perp), pb = b.dot(perp), pc = c.dot(perp);
  const double width = std::max({pa, pb, pc}) - std::min({pa, pb, pc});
  return std::abs(cross2(b - a, c - a)) / width;
}

double amplification(const Eigen::Vector3d& n, double t) {
  const double s = n.x() * std::cos(t) + n.y() * std::sin(t);
  return 1.0 / std::sqrt(1.0 - s * s);
}

double max_chord(const LiftedTriangulation& tri, int k, double t) {
  const auto& v = tri.base.triangles[k];
  const Point2& a = tri.base.vertices[v[0]];
  const Point2& b = tri.base.vertices[v[1]];
  const Point2& c = tri.base.vertices[v[2]];
  if (0.5 * std::abs(cross2(b - a, c - a)) < 1e-14)
    throw DegenerateTriangle("triangle " + std::to_string(k) + " has a degenerate projection");
  return planar_chord(a, b, c, t) * amplification(tri.normals[k], t);
}

std::array<double, 3> chord_breakpoints(const LiftedTriangulation& tri, int k) {
  const auto& v = tri.base.triangles[k];
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const Point2 d = tri.base.vertices[v[(i + 1) % 3]] - tri.base.vertices[v[i]];
    out[i] = wrap_pi(std::atan2(d.y(), d.x()));
  }
  return out;
}

FrictionObjective::FrictionObjective(const LiftedTriangulation& tri, const FluidParams& fluid) {
  elements_.reserve(tri.size());
  for (std::size_t k = 0; k < tri.size(); ++k) {
    const auto& v = tri.base.triangles[k];
    Element e;
    for (int i = 0; i < 3; ++i) e.v[i] = tri.base.vertices[v[i]];
    e.twice_area = std::abs(cross2(e.v[1] - e.v[0], e.v[2] - e.v[0]));
    if (0.5 * e.twice_area < 1e-14)
      throw DegenerateTriangle("triangle " + std::to_string(k) + " has a degenerate projection");
    e.n1 = tri.normals[k].x();
    e.n2 = tri.normals[k].y();
    e.weight = 0.5 * fluid.gamma * tri.areas[k];
    elements_.push_back(e);
    for (double b : chord_breakpoints(tri, static_cast<int>(k))) breakpoints_.push_back(b);
  }
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end(),
                                 [](double x, double y) { return y - x < 1e-12; }),
                     breakpoints_.end());
}

double FrictionObjective::operator()(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  double sum = 0.0;
  for (const auto& e : elements_) {
    const double p0 = -e.v[0].x() * s + e.v[0].y() * c;
    const double p1 = -e.v[1].x() * s + e.v[1].y() * c;
    const double p2 = -e.v[2].x() * s + e.v[2].y() * c;
    const double width = std::max({p0, p1, p2}) - std::min({p0, p1, p2});
    const double dot = e.n1 * c + e.n2 * s;
    sum += e.weight * (e.twice_area / width) / std::sqrt(1.0 - dot * dot);
  }
  return sum;
}

double FrictionObjective::derivative(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  double sum = 0.0;
  for (const auto& e : elements_) {
    std::array<double, 3> p;
    for (int i = 0; i < 3; ++i) p[i] = -e.v[i].x() * s + e.v[i].y() * c;
    const int hi = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    const int lo = static_cast<int>(std::min_element(p.begin(), p.end()) - p.begin());
    const double width = p[hi] - p[lo];
    const Eigen::Vector2d span = e.v[hi] - e.v[lo];
    const double dwidth = -(span.x() * c + span.y() * s);
    const double chord = e.twice_area / width;
    const double dchord = -e.twice_area * dwidth / (width * width);
    const double dot = e.n1 * c + e.n2 * s;
    const double ddot = -e.n1 * s + e.n2 * c;
    const double q = 1.0 - dot * dot;
    const double amp = 1.0 / std::sqrt(q);
    const double damp = dot * ddot / (q * std::sqrt(q));
    sum += e.weight * (dchord * amp + chord * damp);
  }
  return sum;
}

double friction_functional(const LiftedTriangulation& tri, const FluidParams& fluid, const MasterVelocity& b) {
  if (std::abs(b.norm() - 1.0) > 1e-9) throw NotUnit("friction functional needs a unit master velocity");
  const double t = std::atan2(b.y(), b.x());
  double sum = 0.0;
  for (std::size_t k = 0; k < tri.size(); ++k) sum += max_chord(tri, static_cast<int>(k), t) * tri.areas[k];
  return 0.5 * fluid.gamma * b.norm() * sum;
}

double MinimizerSet::arc_measure() const {
  double m = 0.0;
  for (const auto& a : arcs) m += a.length();
  return m;
}

MinimizerSet minimize_piecewise(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                std::vector<double> breakpoints, const MinimizeOptions& options) {
  for (double& b : breakpoints) b = wrap_pi(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end(),
                                [](double x, double y) { return y - x < 1e-12; }),
                    breakpoints.end());
  if (breakpoints.empty()) breakpoints.push_back(0.0);
  const std::size_t m = breakpoints.size();

  // Seeds: an even grid inside every smooth piece, endpoints included.
  const int per = std::clamp(options.max_seed_evaluations / static_cast<int>(m), 2, options.samples_per_interval);
  std::vector<double> seed_t(m * per);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = breakpoints[i];
    const double b = i + 1 < m ? breakpoints[i + 1] : breakpoints[0] + kPi;
    for (int j = 0; j < per; ++j) seed_t[i * per + j] = a + (b - a) * j / per;
  }
  std::vector<double> seed_f(seed_t.size());
  parallel_for(seed_t.size(), [&](std::size_t i) { seed_f[i] = f(seed_t[i]); });

  MinimizerSet out;
  // Dense scan: uniform grid plus the breakpoints themselves.
  out.scan_t.reserve(options.dense_scan + m);
  for (int i = 0; i < options.dense_scan; ++i) out.scan_t.push_back(kPi * i / options.dense_scan);
  for (double b : breakpoints) out.scan_t.push_back(b);
  std::sort(out.scan_t.begin(), out.scan_t.end());
  out.scan_values.resize(out.scan_t.size());
  parallel_for(out.scan_t.size(), [&](std::size_t i) { out.scan_values[i] = f(out.scan_t[i]); });

  double best = std::numeric_limits<double>::infinity();
  for (double v : seed_f) best = std::min(best, v);
  for (double v : out.scan_values) best = std::min(best, v);

  // Bracket-local refinement around seed minima that can compete with the best sample.
  struct Bracket {
    double a, b;
  };
  std::vector<Bracket> brackets;
  const double screen = best + 1e-4 * std::abs(best) + 1e-300;
  for (std::size_t i = 0; i < m; ++i) {
    const double b_end = i + 1 < m ? breakpoints[i + 1] : breakpoints[0] + kPi;
    auto t_at = [&](int j) { return j == per ? b_end : seed_t[i * per + j]; };
    auto f_at = [&](int j) { return j == per ? seed_f[((i + 1) % m) * per] : seed_f[i * per + j]; };
    for (int j = 0; j <= per; ++j) {
      const double fj = f_at(j);
      if (fj > screen) continue;
      const bool left_ok = j == 0 || fj <= f_at(j - 1);
      const bool right_ok = j == per || fj <= f_at(j + 1);
      if (!left_ok || !right_ok) continue;
      brackets.push_back({t_at(std::max(j - 1, 0)), t_at(std::min(j + 1, per))});
    }
  }

  std::vector<Sample> candidates(brackets.size());
  parallel_for(brackets.size(), [&](std::size_t idx) {
    double a = brackets[idx].a, b = brackets[idx].b;
    const double A = a, B = b;
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < options.golden_iterations && b - a > 1e-15; ++it) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - r * (b - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + r * (b - a);
        f2 = f(x2);
      }
    }
    double x = f1 <= f2 ? x1 : x2;
    double fx = std::min(f1, f2);
    for (double end : {A, B}) {
      const double fe = f(end);
      if (fe < fx) {
        x = end;
        fx = fe;
      }
    }
    // Golden section stalls near sqrt(eps) in the abscissa; finish on the sign of df.
    double lo = A, hi = B;
    if (df(lo) < 0.0 && df(hi) > 0.0) {
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (df(mid) < 0.0 ? lo : hi) = mid;
      }
      const double xp = 0.5 * (lo + hi);
      const double fp = f(xp);
      // f is flat to rounding near the root; the derivative sign is the sharper test.
      if (fp <= fx + 1e-14 * std::abs(fx)) {
        x = xp;
        fx = fp;
      }
    }
    candidates[idx] = {x, fx, false};
  });

  double xmin = best;
  for (const auto& c : candidates) xmin = std::min(xmin, c.f);
  out.min_value = xmin;
  const double level = xmin + options.plateau_rel * std::abs(xmin);
  auto on_level = [&](double t) { return f(t) <= level; };

  // Plateau runs across all evaluated abscissae, ordered on the circle [0, pi).
  std::vector<Sample> all;
  all.reserve(seed_t.size() + out.scan_t.size());
  for (std::size_t i = 0; i < seed_t.size(); ++i) all.push_back({wrap_pi(seed_t[i]), seed_f[i], i % per == 0});
  for (std::size_t i = 0; i < out.scan_t.size(); ++i) {
    const bool bp = std::binary_search(breakpoints.begin(), breakpoints.end(), out.scan_t[i]);
    all.push_back({out.scan_t[i], out.scan_values[i], bp});
  }
  std::sort(all.begin(), all.end(), [](const Sample& x, const Sample& y) { return x.t < y.t; });
  // Seeds, scan points and breakpoints coincide in places; one sample per abscissa.
  std::vector<Sample> uniq;
  for (const auto& smp : all) {
    if (!uniq.empty() && smp.t - uniq.back().t < 1e-13) {
      uniq.back().f = std::min(uniq.back().f, smp.f);
      uniq.back().breakpoint = uniq.back().breakpoint || smp.breakpoint;
      continue;
    }
    uniq.push_back(smp);
  }
  all.swap(uniq);
  const std::size_t n = all.size();

  std::vector<ParameterArc> arcs;
  std::size_t first_out = n;
  for (std::size_t i = 0; i < n; ++i)
    if (all[i].f > level) {
      first_out = i;
      break;
    }
  if (first_out == n) {
    arcs.push_back({0.0, kPi});
  } else {
    auto pos = [&](std::size_t k) { return all[k % n].t + kPi * static_cast<double>(k / n); };
    for (std::size_t s = 1; s <= n; ++s) {
      const std::size_t i = first_out + s;
      if (all[i % n].f > level || all[(i - 1) % n].f <= level) continue;
      std::size_t len = 0;
      while (all[(i + len) % n].f <= level) ++len;
      if (len < 2) continue;
      const double ts = pos(i), te = pos(i + len - 1);
      auto refine = [&](double in, double outside) {
        for (int it = 0; it < 200 && std::abs(outside - in) > 1e-12; ++it) {
          const double mid = 0.5 * (in + outside);
          (on_level(mid) ? in : outside) = mid;
        }
        return in;
      };
      const double a = refine(ts, pos(i - 1));
      const double b = refine(te, pos(i + len));
      // A smooth well also dips below the level on a short window; only a
      // flat run keeps the derivative at zero across its interior.
      bool flat = true;
      for (double frac : {0.25, 0.5, 0.75}) {
        const double probe = a + frac * (b - a);
        if (!on_level(probe) || std::abs(df(probe)) > options.plateau_rel * std::abs(xmin)) flat = false;
      }
      if (!flat || b - a < options.min_arc_length) {
        candidates.push_back({0.5 * (a + b), f(0.5 * (a + b)), false});
        continue;
      }
      const double aw = wrap_pi(a);
      const double bw = aw + (b - a);
      if (bw <= kPi) {
        arcs.push_back({aw, bw});
      } else {
        arcs.push_back({aw, kPi});
        arcs.push_back({0.0, bw - kPi});
      }
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const auto& x, const auto& y) { return x.begin < y.begin; });
  out.arcs = arcs;

  // Isolated minimizers: refined brackets and exact breakpoint (kink) samples.
  std::vector<Sample> pts;
  for (const auto& c : candidates)
    if (c.f <= level) pts.push_back({wrap_pi(c.t), c.f, false});
  for (const auto& s : all)
    if (s.breakpoint && s.f <= level) pts.push_back(s);
  auto in_arc = [&](double t) {
    for (const auto& a : arcs)
      if (t >= a.begin - 1e-12 && t <= a.end + 1e-12) return true;
    return false;
  };
  std::sort(pts.begin(), pts.end(), [](const Sample& x, const Sample& y) { return x.t < y.t; });
  std::vector<Sample> kept;
  for (const auto& p : pts) {
    if (in_arc(p.t)) continue;
    if (!kept.empty() && p.t - kept.back().t < options.min_arc_length) {
      if (p.f < kept.back().f) kept.back() = p;
      continue;
    }
    kept.push_back(p);
  }
  if (kept.size() > 1 && kept.front().t + kPi - kept.back().t < options.min_arc_length) {
    if (kept.back().f < kept.front().f) kept.front() = kept.back();
    kept.pop_back();
  }
  for (const auto& p : kept) out.points.push_back(p.t);
  return out;
}

MinimizerSet minimize_friction(const LiftedTriangulation& tri, const FluidParams& fluid,
                               const MinimizeOptions& options) {
  const FrictionObjective x(tri, fluid);
  return minimize_piecewise([&](double t) { return x(t); }, [&](double t) { return x.derivative(t); },
                            x.breakpoints(), options);
}

DirectionDistribution preferential_friction(const MinimizerSet& minimizers, const LiftedTriangulation& tri) {
  const ElementMatrix map = average_operator(tri, FieldKind::curvature_V);
  if (!minimizers.arcs.empty()) {
    std::vector<ParameterArc> arcs;
    for (const auto& a : minimizers.arcs) arcs.push_back(a);
    for (const auto& a : minimizers.arcs) arcs.push_back({a.begin + kPi, a.end + kPi});
    std::sort(arcs.begin(), arcs.end(), [](const auto& x, const auto& y) { return x.begin < y.begin; });
    return DirectionDistribution::uniform_on_arcs(arcs, map);
  }
  std::vector<DirectionAtom> atoms;
  const double p = 1.0 / (2.0 * static_cast<double>(minimizers.points.size()));
  for (double t : minimizers.points) atoms.push_back({push_direction(map, t), p, t});
  for (double t : minimizers.points) atoms.push_back({push_direction(map, t + kPi), p, t + kPi});
  return DirectionDistribution::atomic(atoms);
}

nlohmann::json FrictionAnalysis::to_json() const {
  nlohmann::json j;
  j["min_value"] = minimizers.min_value;
  j["minimizers"]["points"] = minimizers.points;
  j["minimizers"]["arcs"] = nlohmann::json::array();
  for (const auto& a : minimizers.arcs) j["minimizers"]["arcs"].push_back({a.begin, a.end});
  j["dense_scan"] = minimizers.scan_t.size();
  j["distribution"] = distribution.to_json();
  return j;
}

FrictionAnalysis analyze_friction(const LiftedTriangulation& tri, const FluidParams& fluid,
                                  const MinimizeOptions& options) {
  FrictionAnalysis a;
  a.minimizers = minimize_friction(tri, fluid, options);
  a.distribution = preferential_friction(a.minimizers, tri);
  return a;
}

}  // namespace fissura
