#pragma once

#include "fissura/distribution.hpp"
#include "fissura/flow_field.hpp"

#include <functional>
#include <vector>

namespace fissura {

/// Max chord of a planar triangle along (cos t, sin t): twice the area over
/// the triangle's width perpendicular to that direction.
double planar_chord(const Point2& a, const Point2& b, const Point2& c, double t);

/// 1 / sqrt(1 - (n . (cos t, sin t, 0))^2).
double amplification(const Eigen::Vector3d& normal, double t);

/// Projected max chord times the lifting amplification.
/// Throws DegenerateTriangle if the projected area is below 1e-14.
double max_chord(const LiftedTriangulation& tri, int k, double t);

/// Directions (mod pi, in [0, pi)) of the projected sides of triangle k.
std::array<double, 3> chord_breakpoints(const LiftedTriangulation& tri, int k);

/// X(t) = (gamma / 2) sum_K d(K, t) |K^zeta| with its derivative, evaluated
/// from precomputed per-element data.
class FrictionObjective {
 public:
  FrictionObjective(const LiftedTriangulation& tri, const FluidParams& fluid);

  double operator()(double t) const;
  double derivative(double t) const;
  /// Sorted, de-duplicated breakpoints in [0, pi).
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  struct Element {
    std::array<Eigen::Vector2d, 3> v;
    double twice_area;
    double n1, n2;
    double weight;
  };
  std::vector<Element> elements_;
  std::vector<double> breakpoints_;
};

/// F(b) = (gamma / 2) |b| sum_K d(K, t_b) |K^zeta|. Throws NotUnit unless |b| = 1.
double friction_functional(const LiftedTriangulation& tri, const FluidParams& fluid, const MasterVelocity& b);

struct MinimizeOptions {
  int samples_per_interval = 64;
  int dense_scan = 8192;
  /// Cap on seed evaluations over all intervals; per-interval seeds shrink
  /// (down to 2) for meshes with many distinct breakpoints.
  int max_seed_evaluations = 1 << 16;
  int golden_iterations = 200;
  double plateau_rel = 1e-9;
  double min_arc_length = 1e-7;
};

struct MinimizerSet {
  double min_value = 0.0;
  std::vector<double> points;            // in [0, pi)
  std::vector<ParameterArc> arcs;        // within [0, pi]
  std::vector<double> scan_t;            // dense-scan abscissae (incl. breakpoints)
  std::vector<double> scan_values;

  double arc_measure() const;
};

/// Global minimization of a pi-periodic function that is smooth between the
/// given breakpoints. `df` is its derivative inside each piece.
MinimizerSet minimize_piecewise(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                std::vector<double> breakpoints, const MinimizeOptions& options = {});

MinimizerSet minimize_friction(const LiftedTriangulation& tri, const FluidParams& fluid,
                               const MinimizeOptions& options = {});

/// Each minimizer t contributes atoms at t and t + pi; plateau arcs (and their
/// pi-shifts) carry the uniform measure when present.
DirectionDistribution preferential_friction(const MinimizerSet& minimizers, const LiftedTriangulation& tri);

struct FrictionAnalysis {
  MinimizerSet minimizers;
  DirectionDistribution distribution;

  nlohmann::json to_json() const;
};

FrictionAnalysis analyze_friction(const LiftedTriangulation& tri, const FluidParams& fluid,
                                  const MinimizeOptions& options = {});

}  // namespace fissura
