#include "fissura/gravity.hpp"

#include "fissura/errors.hpp"
#include "fissura/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fissura {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double dissipation_grav(const LiftedTriangulation& tri, const FluidParams& fluid, const MasterVelocity& b) {
  return dissipation(tri, apply_G(tri, b, fluid), fluid).value;
}

Downstream downstream(const LiftedTriangulation& tri, int k, const Eigen::Vector3d& u) {
  Downstream d;
  const double cutoff = 1e-12 * u.norm();
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    d.flux[i] = tri.edge_normals[k][i].dot(u);
    if (d.flux[i] > cutoff) {
      d.edge[i] = true;
      total += d.flux[i];
    }
  }
  for (int i = 0; i < 3; ++i)
    if (d.edge[i]) d.weight[i] = d.flux[i] / total;
  return d;
}

double external_energy(const LiftedTriangulation& tri, const FluidParams& fluid, const MasterVelocity& b) {
  if (std::abs(b.norm() - 1.0) > 1e-9) throw NotUnit("external energy needs a unit master velocity");
  const Mesh2D& mesh = tri.base;
  const ElementField field = apply_G(tri, b, fluid);
  double kinetic = 0.0, potential = 0.0;
  for (std::size_t k = 0; k < tri.size(); ++k) {
    const Eigen::Vector3d& u = field.u[k];
    const double speed = u.norm();
    if (speed == 0.0) continue;
    const double w = 1.0 / speed;
    const Downstream d = downstream(tri, static_cast<int>(k), u);
    const double mass = tri.areas[k] * w;
    for (int i = 0; i < 3; ++i) {
      if (!d.edge[i]) continue;
      kinetic += mass * d.weight[i] * d.flux[i] * d.flux[i];
      const int e = mesh.triangle_edges[k][i];
      const int other = mesh.neighbor(static_cast<int>(k), e);
      const double target = other == kNoTriangle ? tri.transmission_points[e].z() : tri.control_points[other].z();
      potential += mass * d.weight[i] * (target - tri.control_points[k].z());
    }
  }
  return 0.5 * fluid.rho * kinetic + fluid.rho * fluid.g * potential;
}

bool energy_tie(double e_plus, double e_minus) {
  return std::abs(e_plus - e_minus) <= 1e-9 * (std::abs(e_plus) + std::abs(e_minus) + 1e-30);
}

MasterVelocity entropy_choice(const LiftedTriangulation& tri, const FluidParams& fluid, const MasterVelocity& b) {
  const double ep = external_energy(tri, fluid, b);
  const double em = external_energy(tri, fluid, -b);
  if (ep >= em || energy_tie(ep, em)) return b;
  return -b;
}

std::vector<ParameterArc> eligible_set(const std::function<double(double)>& e_of_t, int samples, double tol) {
  auto eligible = [&](double t) {
    const double ep = e_of_t(t), em = e_of_t(t + std::numbers::pi);
    return ep >= em || energy_tie(ep, em);
  };
  std::vector<char> in(samples);
  const double h = kTwoPi / samples;
  parallel_for(samples, [&](std::size_t i) { in[i] = eligible(h * static_cast<double>(i)); });

  // Bisection between an eligible sample a and an ineligible sample b.
  auto refine = [&](double a, double b) {
    for (int it = 0; it < 200 && std::abs(b - a) > tol; ++it) {
      const double m = 0.5 * (a + b);
      (eligible(m) ? a : b) = m;
    }
    return a;
  };

  std::size_t first_out = samples;
  for (int i = 0; i < samples; ++i)
    if (!in[i]) {
      first_out = i;
      break;
    }
  if (first_out == static_cast<std::size_t>(samples)) return {{0.0, kTwoPi}};

  // Walk the circle starting just after the first ineligible sample so runs never wrap.
  std::vector<ParameterArc> raw;
  for (int s = 1; s <= samples; ++s) {
    const int i = static_cast<int>((first_out + s) % samples);
    const int prev = static_cast<int>((first_out + s - 1) % samples);
    if (!in[i] || in[prev]) continue;
    // Run starts at sample index i (unwrapped position first_out + s).
    int len = 0;
    while (in[(i + len) % samples]) ++len;
    const double start_pos = h * static_cast<double>(first_out + s);
    const double end_pos = start_pos + h * (len - 1);
    const double a = refine(start_pos, start_pos - h);
    const double b = refine(end_pos, end_pos + h);
    raw.push_back({a, b});
  }

  // Map back into [0, 2 pi], splitting runs that cross zero.
  std::vector<ParameterArc> arcs;
  for (const auto& r : raw) {
    const double a = wrap_angle(r.begin);
    const double b = a + (r.end - r.begin);
    if (b <= kTwoPi) {
      arcs.push_back({a, b});
    } else {
      arcs.push_back({a, kTwoPi});
      arcs.push_back({0.0, b - kTwoPi});
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const auto& x, const auto& y) { return x.begin < y.begin; });
  return arcs;
}

nlohmann::json GravityAnalysis::to_json() const {
  nlohmann::json j = form.to_json();
  j["case"] = case_id;
  j["degenerate"] = form.degenerate();
  if (case_id != 3) {
    j["e_plus"] = e_plus;
    j["e_minus"] = e_minus;
  }
  j["r_grav_arcs"] = nlohmann::json::array();
  for (const auto& a : r_grav) j["r_grav_arcs"].push_back({a.begin, a.end});
  j["distribution"] = distribution.to_json();
  return j;
}

GravityAnalysis preferential_grav(const LiftedTriangulation& tri, const FluidParams& fluid) {
  GravityAnalysis a;
  a.form = assemble_form(tri, fluid, FieldKind::gravity_G);
  const ElementMatrix map = average_operator(tri, FieldKind::gravity_G, fluid);
  if (a.form.degenerate()) {
    a.case_id = 3;
    a.r_grav = eligible_set([&](double t) { return external_energy(tri, fluid, direction(t)); });
    a.distribution = DirectionDistribution::uniform_on_arcs(a.r_grav, map);
    return a;
  }
  const double t = std::atan2(a.form.f1.y(), a.form.f1.x());
  a.e_plus = external_energy(tri, fluid, direction(t));
  a.e_minus = external_energy(tri, fluid, direction(t + std::numbers::pi));
  if (energy_tie(a.e_plus, a.e_minus)) {
    a.case_id = 2;
    a.distribution = DirectionDistribution::atomic({
        {push_direction(map, t), 0.5, wrap_angle(t)},
        {push_direction(map, t + std::numbers::pi), 0.5, wrap_angle(t + std::numbers::pi)},
    });
    return a;
  }
  a.case_id = 1;
  const double chosen = a.e_plus > a.e_minus ? t : t + std::numbers::pi;
  a.distribution = DirectionDistribution::atomic({{push_direction(map, chosen), 1.0, wrap_angle(chosen)}});
  return a;
}

}  // namespace fissura
