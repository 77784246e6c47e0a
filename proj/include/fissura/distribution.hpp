#pragma once

#include "fissura/flow_field.hpp"

#include <json.hpp>

#include <functional>
#include <random>
#include <vector>

namespace fissura {

struct DirectionAtom {
  Eigen::Vector3d dir;
  double probability = 0.0;
  double parameter = 0.0;  // master-direction angle that produced the atom
};

/// Closed parameter interval [begin, end] within [0, 2 pi].
struct ParameterArc {
  double begin = 0.0;
  double end = 0.0;

  double length() const { return end - begin; }
};

/// Probability space of preferred flow directions.
///
/// Finite atoms carry point masses; the remaining mass is spread uniformly in
/// parameter length over `arcs` and pushed forward to S^2 through
/// t -> L e_t / |L e_t|, where L is the (injective) averaged velocity operator.
/// Events are queried through their pre-image in parameter space or through a
/// direction predicate.
class DirectionDistribution {
 public:
  DirectionDistribution() = default;

  static DirectionDistribution atomic(std::vector<DirectionAtom> atoms);
  /// Uniform over the union of arcs. Wrapping arcs must be pre-split.
  static DirectionDistribution uniform_on_arcs(std::vector<ParameterArc> arcs, const ElementMatrix& map);

  const std::vector<DirectionAtom>& atoms() const { return atoms_; }
  const std::vector<ParameterArc>& arcs() const { return arcs_; }
  const ElementMatrix& pushforward() const { return map_; }
  double arc_mass() const { return arc_mass_; }
  double arc_length() const;
  bool is_atomic() const { return arcs_.empty(); }

  double total_probability() const;
  Eigen::Vector3d push(double t) const;

  /// P[phi(A)] for the parameter arc A = [a, b] (a <= b, taken modulo 2 pi).
  double probability_of_parameter_arc(double a, double b) const;
  /// P[{d : predicate(d)}], with arcs integrated by midpoint quadrature.
  double probability(const std::function<bool(const Eigen::Vector3d&)>& predicate,
                     int samples_per_arc = 4096) const;

  Eigen::Vector3d sample(std::mt19937_64& rng) const;
  /// Atoms plus arc mass lumped onto `segments_per_turn` evenly spaced points
  /// per full turn; used for plot-ready output.
  std::vector<DirectionAtom> discretize(int segments_per_turn = 360) const;

  nlohmann::json to_json() const;

 private:
  std::vector<DirectionAtom> atoms_;
  std::vector<ParameterArc> arcs_;
  ElementMatrix map_ = ElementMatrix::Zero();
  double arc_mass_ = 0.0;
};

/// Normalized image of the unit master direction at angle t.
Eigen::Vector3d push_direction(const ElementMatrix& map, double t);

/// Reduces an angle to [0, 2 pi).
double wrap_angle(double t);

}  // namespace fissura
