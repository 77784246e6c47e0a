#include "fissura/superposition.hpp"

#include "fissura/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace fissura {

SuperpositionWeights compute_weights(double min_curv, double min_grav, double min_friction) {
  const double total = min_curv + min_grav + min_friction;
  if (total < 1e-14) return {};
  return {min_curv / total, min_grav / total, min_friction / total};
}

Eigen::Vector3d superpose_directions(const SuperpositionWeights& w, const Eigen::Vector3d& a1,
                                     const Eigen::Vector3d& a2, const Eigen::Vector3d& a3) {
  const Eigen::Vector3d s = w.p1 * a1 + w.p2 * a2 + w.p3 * a3;
  const double norm = s.norm();
  if (norm < 1e-12) return Eigen::Vector3d::Zero();
  return s / norm;
}

double GlobalDirectionSpace::total_probability() const {
  double p = 0.0;
  for (const auto& s : samples) p += s.probability;
  return p;
}

nlohmann::json GlobalDirectionSpace::to_json() const {
  nlohmann::json j;
  j["zero_mass"] = zero_mass;
  j["sampled"] = sampled;
  j["count"] = samples.size();
  // Sampled spaces are summarized elsewhere (entropy, network); listing 10^4 draws is noise.
  j["atoms"] = nlohmann::json::array();
  if (!sampled) {
    for (const auto& s : samples)
      j["atoms"].push_back({{"dir", {s.dir.x(), s.dir.y(), s.dir.z()}}, {"p", s.probability}});
  }
  return j;
}

namespace {

void check_normalized(const DirectionDistribution& d, const char* name) {
  const double total = d.total_probability();
  if (std::abs(total - 1.0) > 1e-10)
    throw NotNormalized(std::string(name) + " has total probability " + std::to_string(total));
}

bool same_direction(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const bool za = a.isZero(0.0), zb = b.isZero(0.0);
  if (za || zb) return za && zb;
  // Angle via atan2 of |a x b| and a.b keeps precision at tiny separations.
  return std::atan2(a.cross(b).norm(), a.dot(b)) <= 1e-10;
}

}  // namespace

GlobalDirectionSpace superpose(const DirectionDistribution& d1, const DirectionDistribution& d2,
                               const DirectionDistribution& d3, const SuperpositionWeights& w, int n_samples,
                               std::uint64_t seed) {
  check_normalized(d1, "curvature distribution");
  check_normalized(d2, "gravity distribution");
  check_normalized(d3, "friction distribution");
  GlobalDirectionSpace space;
  if (d1.is_atomic() && d2.is_atomic() && d3.is_atomic()) {
    for (const auto& a1 : d1.atoms())
      for (const auto& a2 : d2.atoms())
        for (const auto& a3 : d3.atoms())
          space.pre_merge.push_back({superpose_directions(w, a1.dir, a2.dir, a3.dir),
                                     a1.probability * a2.probability * a3.probability});
    for (const auto& s : space.pre_merge) {
      auto it = std::find_if(space.samples.begin(), space.samples.end(),
                             [&](const WeightedDirection& m) { return same_direction(m.dir, s.dir); });
      if (it == space.samples.end())
        space.samples.push_back(s);
      else
        it->probability += s.probability;
    }
  } else {
    if (n_samples < 1) throw NotNormalized("product sampling needs at least one sample");
    space.sampled = true;
    std::mt19937_64 rng(seed);
    const double p = 1.0 / n_samples;
    space.samples.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
      const Eigen::Vector3d a1 = d1.sample(rng);
      const Eigen::Vector3d a2 = d2.sample(rng);
      const Eigen::Vector3d a3 = d3.sample(rng);
      space.samples.push_back({superpose_directions(w, a1, a2, a3), p});
    }
  }
  for (const auto& s : space.samples)
    if (s.is_zero()) space.zero_mass += s.probability;
  return space;
}

double partition_entropy(const GlobalDirectionSpace& space, const std::vector<Cell>& partition) {
  std::vector<double> mass(partition.size(), 0.0);
  for (std::size_t i = 0; i < space.samples.size(); ++i) {
    const auto& s = space.samples[i];
    int hit = -1;
    for (std::size_t c = 0; c < partition.size(); ++c) {
      if (!partition[c](s.dir)) continue;
      if (hit >= 0) throw CellOverlap("sample " + std::to_string(i) + " lies in two cells");
      hit = static_cast<int>(c);
    }
    if (hit < 0) throw UncoveredSample("sample " + std::to_string(i) + " is not covered by the partition");
    mass[hit] += s.probability;
  }
  double h = 0.0;
  for (double p : mass)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

nlohmann::json EntropyReport::to_json() const {
  nlohmann::json j;
  j["atomic_entropy"] = atomic_entropy ? nlohmann::json(*atomic_entropy) : nlohmann::json(nullptr);
  j["histogram_entropy"] = histogram_entropy ? nlohmann::json(*histogram_entropy) : nlohmann::json(nullptr);
  j["bins"] = bins;
  j["zero_mass"] = zero_mass;
  return j;
}

EntropyReport geometric_entropy(const GlobalDirectionSpace& space, int bins) {
  EntropyReport r;
  r.bins = bins;
  r.zero_mass = space.zero_mass;
  if (!space.sampled) {
    double h = 0.0;
    for (const auto& s : space.samples)
      if (s.probability > 0.0) h -= s.probability * std::log(s.probability);
    r.atomic_entropy = h;
    return r;
  }
  const int n_z = std::max(bins, 1);
  const int n_lon = 2 * n_z;
  std::vector<double> mass(static_cast<std::size_t>(n_z) * n_lon, 0.0);
  double sphere_mass = 0.0;
  for (const auto& s : space.samples) {
    if (s.is_zero()) continue;
    const double z = std::clamp(s.dir.z(), -1.0, 1.0);
    const int iz = std::min(n_z - 1, static_cast<int>(std::floor((z + 1.0) * 0.5 * n_z)));
    double lon = std::atan2(s.dir.y(), s.dir.x());
    if (lon < 0) lon += 2.0 * std::numbers::pi;
    const int il = std::min(n_lon - 1, static_cast<int>(std::floor(lon / (2.0 * std::numbers::pi) * n_lon)));
    mass[static_cast<std::size_t>(iz) * n_lon + il] += s.probability;
    sphere_mass += s.probability;
  }
  if (sphere_mass <= 0.0) return r;
  const double cell_area = 4.0 * std::numbers::pi / (n_z * n_lon);
  double h = 0.0;
  for (double m : mass) {
    if (m <= 0.0) continue;
    const double p = m / sphere_mass;
    h -= p * std::log(p / cell_area);
  }
  r.histogram_entropy = h;
  return r;
}

}  // namespace fissura
