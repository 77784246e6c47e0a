#pragma once

#include "fissura/curvature.hpp"

#include <functional>
#include <vector>

namespace fissura {

double dissipation_grav(const LiftedTriangulation& tri, const FluidParams& fluid, const MasterVelocity& b);

/// Edges of one element that carry outflow for velocity u.
struct Downstream {
  std::array<bool, 3> edge{false, false, false};
  std::array<double, 3> flux{0.0, 0.0, 0.0};   // nu . u
  std::array<double, 3> weight{0.0, 0.0, 0.0}; // W_sigma, zero off the downstream set

  int count() const { return int(edge[0]) + int(edge[1]) + int(edge[2]); }
};

/// Strictly positive outflow: nu . u > 1e-12 |u|.
Downstream downstream(const LiftedTriangulation& tri, int k, const Eigen::Vector3d& u);

/// External energy of the gravity field for unit b: kinetic plus interior and
/// boundary potential terms, each weighted by the element's mass fraction.
/// Throws NotUnit unless |b| = 1 within 1e-9.
double external_energy(const LiftedTriangulation& tri, const FluidParams& fluid, const MasterVelocity& b);

/// True when E(b) and E(-b) agree to 1e-9 relative.
bool energy_tie(double e_plus, double e_minus);

/// b when E(b) >= E(-b) (ties included), else -b.
MasterVelocity entropy_choice(const LiftedTriangulation& tri, const FluidParams& fluid, const MasterVelocity& b);

/// Points t in [0, 2 pi) with F(t) >= 0 (within the tie tolerance), where
/// F(t) = E(e_t) - E(-e_t). Boundaries are refined by bisection.
std::vector<ParameterArc> eligible_set(const std::function<double(double)>& e_of_t, int samples = 4096,
                                       double tol = 1e-10);

struct GravityAnalysis {
  EnergyForm form;
  int case_id = 0;  // 1, 2 or 3
  double e_plus = 0.0;   // E(f1) in cases 1-2
  double e_minus = 0.0;  // E(-f1)
  std::vector<ParameterArc> r_grav;
  DirectionDistribution distribution;

  nlohmann::json to_json() const;
};

GravityAnalysis preferential_grav(const LiftedTriangulation& tri, const FluidParams& fluid);

}  // namespace fissura
