#include "fissura/distribution.hpp"

#include "fissura/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fissura {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Splits [a, b] (a <= b) into pieces inside [0, 2 pi).
std::vector<ParameterArc> split_query(double a, double b) {
  std::vector<ParameterArc> out;
  if (b - a >= kTwoPi) return {{0.0, kTwoPi}};
  const double start = wrap_angle(a);
  const double stop = start + (b - a);
  if (stop <= kTwoPi) {
    out.push_back({start, stop});
  } else {
    out.push_back({start, kTwoPi});
    out.push_back({0.0, stop - kTwoPi});
  }
  return out;
}
}  // namespace

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

Eigen::Vector3d push_direction(const ElementMatrix& map, double t) {
  const Eigen::Vector3d v = map * direction(t);
  return v / v.norm();
}

DirectionDistribution DirectionDistribution::atomic(std::vector<DirectionAtom> atoms) {
  DirectionDistribution d;
  d.atoms_ = std::move(atoms);
  return d;
}

DirectionDistribution DirectionDistribution::uniform_on_arcs(std::vector<ParameterArc> arcs,
                                                             const ElementMatrix& map) {
  DirectionDistribution d;
  for (const auto& a : arcs) {
    if (!(a.begin >= 0.0 && a.end <= kTwoPi + 1e-12 && a.end >= a.begin))
      throw NotNormalized("parameter arcs must lie in [0, 2 pi] with begin <= end");
  }
  d.arcs_ = std::move(arcs);
  d.map_ = map;
  d.arc_mass_ = 1.0;
  if (!(d.arc_length() > 0.0)) throw NotNormalized("uniform arc distribution needs positive arc length");
  return d;
}

double DirectionDistribution::arc_length() const {
  double len = 0.0;
  for (const auto& a : arcs_) len += a.length();
  return len;
}

double DirectionDistribution::total_probability() const {
  double p = arc_mass_;
  for (const auto& a : atoms_) p += a.probability;
  return p;
}

Eigen::Vector3d DirectionDistribution::push(double t) const { return push_direction(map_, t); }

double DirectionDistribution::probability_of_parameter_arc(double a, double b) const {
  const auto pieces = split_query(a, b);
  double p = 0.0;
  for (const auto& atom : atoms_) {
    const double t = wrap_angle(atom.parameter);
    for (const auto& q : pieces) {
      if (t >= q.begin && t <= q.end) {
        p += atom.probability;
        break;
      }
    }
  }
  if (arc_mass_ > 0.0) {
    double overlap = 0.0;
    for (const auto& arc : arcs_) {
      for (const auto& q : pieces)
        overlap += std::max(0.0, std::min(arc.end, q.end) - std::max(arc.begin, q.begin));
    }
    p += arc_mass_ * overlap / arc_length();
  }
  return p;
}

double DirectionDistribution::probability(const std::function<bool(const Eigen::Vector3d&)>& predicate,
                                          int samples_per_arc) const {
  double p = 0.0;
  for (const auto& atom : atoms_) {
    if (predicate(atom.dir)) p += atom.probability;
  }
  if (arc_mass_ > 0.0) {
    const double total = arc_length();
    for (const auto& arc : arcs_) {
      const double h = arc.length() / samples_per_arc;
      int hits = 0;
      for (int i = 0; i < samples_per_arc; ++i) {
        if (predicate(push(arc.begin + (i + 0.5) * h))) ++hits;
      }
      p += arc_mass_ * (arc.length() / total) * hits / samples_per_arc;
    }
  }
  return p;
}

Eigen::Vector3d DirectionDistribution::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng) * total_probability();
  for (const auto& atom : atoms_) {
    if (u < atom.probability) return atom.dir;
    u -= atom.probability;
  }
  if (arcs_.empty()) return atoms_.back().dir;
  double s = unit(rng) * arc_length();
  for (const auto& arc : arcs_) {
    if (s <= arc.length()) return push(arc.begin + s);
    s -= arc.length();
  }
  return push(arcs_.back().end);
}

std::vector<DirectionAtom> DirectionDistribution::discretize(int segments_per_turn) const {
  std::vector<DirectionAtom> out = atoms_;
  if (arc_mass_ <= 0.0) return out;
  const double total = arc_length();
  for (const auto& arc : arcs_) {
    const int n = std::max(1, static_cast<int>(std::ceil(arc.length() / kTwoPi * segments_per_turn)));
    const double h = arc.length() / n;
    for (int i = 0; i < n; ++i) {
      const double t = arc.begin + (i + 0.5) * h;
      out.push_back({push(t), arc_mass_ * h / total, t});
    }
  }
  return out;
}

nlohmann::json DirectionDistribution::to_json() const {
  nlohmann::json j;
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : atoms_)
    j["atoms"].push_back({{"dir", {a.dir.x(), a.dir.y(), a.dir.z()}}, {"p", a.probability}, {"t", a.parameter}});
  j["arcs"] = nlohmann::json::array();
  for (const auto& a : arcs_) j["arcs"].push_back({a.begin, a.end});
  j["arc_mass"] = arc_mass_;
  if (!arcs_.empty()) {
    j["map"] = nlohmann::json::array();
    for (int r = 0; r < 3; ++r) j["map"].push_back({map_(r, 0), map_(r, 1)});
  }
  return j;
}

}  // namespace fissura
