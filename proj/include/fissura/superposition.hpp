#pragma once

#include "fissura/distribution.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace fissura {

struct SuperpositionWeights {
  double p1 = 1.0 / 3.0;
  double p2 = 1.0 / 3.0;
  double p3 = 1.0 / 3.0;
};

/// p_i = min_i / (sum of minima); uniform when the sum is below 1e-14.
SuperpositionWeights compute_weights(double min_curv, double min_grav, double min_friction);

/// normalize(p1 a1 + p2 a2 + p3 a3), or the zero vector when that sum is shorter than 1e-12.
Eigen::Vector3d superpose_directions(const SuperpositionWeights& w, const Eigen::Vector3d& a1,
                                     const Eigen::Vector3d& a2, const Eigen::Vector3d& a3);

struct WeightedDirection {
  Eigen::Vector3d dir;  // unit, or exactly zero
  double probability = 0.0;

  bool is_zero() const { return dir.isZero(0.0); }
};

struct GlobalDirectionSpace {
  std::vector<WeightedDirection> samples;    // merged atoms, or Monte Carlo draws
  std::vector<WeightedDirection> pre_merge;  // full product table (atomic inputs only)
  double zero_mass = 0.0;
  bool sampled = false;

  double total_probability() const;
  nlohmann::json to_json() const;
};

/// Product measure of three direction spaces pushed through the superposition
/// map. Exact enumeration when every input is atomic, otherwise `n_samples`
/// seeded draws. Throws NotNormalized when an input's mass is not 1 +- 1e-10.
GlobalDirectionSpace superpose(const DirectionDistribution& d1, const DirectionDistribution& d2,
                               const DirectionDistribution& d3, const SuperpositionWeights& w, int n_samples,
                               std::uint64_t seed);

using Cell = std::function<bool(const Eigen::Vector3d&)>;

/// -sum P[A] log P[A] over the cells. Throws CellOverlap when a sample lies in
/// two cells and UncoveredSample when it lies in none.
double partition_entropy(const GlobalDirectionSpace& space, const std::vector<Cell>& partition);

struct EntropyReport {
  std::optional<double> atomic_entropy;     // exact, atomic spaces only
  std::optional<double> histogram_entropy;  // sample-based spaces only
  int bins = 0;                             // latitude bands; longitude uses 2 * bins
  double zero_mass = 0.0;

  nlohmann::json to_json() const;
};

/// Atomic entropy -sum p log p for enumerated spaces. For sampled spaces, a
/// differential-entropy estimate -sum P log(P / dA) over the unit-sphere mass
/// (conditioned on being nonzero) using `bins` equal-height bands in z times
/// 2 * bins longitude sectors, so every cell has the same area.
EntropyReport geometric_entropy(const GlobalDirectionSpace& space, int bins);

}  // namespace fissura
