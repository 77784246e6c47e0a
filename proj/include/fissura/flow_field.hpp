#pragma once

#include "fissura/lift.hpp"

#include <Eigen/Core>

#include <cmath>
#include <vector>

namespace fissura {

/// Horizontal reference velocity (alpha_1, alpha_2).
using MasterVelocity = Eigen::Vector2d;
using ElementMatrix = Eigen::Matrix<double, 3, 2>;

inline MasterVelocity direction(double t) { return {std::cos(t), std::sin(t)}; }

struct FluidParams {
  double mu = 1.0e-3;  // viscosity [Pa s]
  double rho = 1.0e3;  // density [kg / m^3]
  double g = 9.81;     // gravity [m / s^2]
  double gamma = 1.0;  // wall friction coefficient

  /// Throws InvalidFluid unless every parameter is strictly positive.
  void validate() const;
};

enum class FieldKind { curvature_V, gravity_G };

/// Piecewise-constant velocity, one 3-vector per element.
struct ElementField {
  FieldKind kind = FieldKind::curvature_V;
  std::vector<Eigen::Vector3d> u;
};

/// Maps a master velocity to the element velocity on a face with unit upward
/// normal n. The image of a unit vector is a unit vector tangent to the face.
/// Throws InvalidNormal when |n| != 1 or n_3 <= 0.
ElementMatrix element_matrix(const Eigen::Vector3d& normal);

/// Velocity magnitude factor s(K) = sqrt(1 + 2 g (z_max - p^K_z)).
std::vector<double> gravity_speed_factors(const LiftedTriangulation& tri, const FluidParams& fluid);

ElementField apply_V(const LiftedTriangulation& tri, const MasterVelocity& b);
ElementField apply_G(const LiftedTriangulation& tri, const MasterVelocity& b, const FluidParams& fluid);

/// Area-weighted mean velocity over the lifted surface.
Eigen::Vector3d average(const LiftedTriangulation& tri, const ElementField& field);

/// Linear map b -> average(V b) (or average(G b)) as a 3x2 matrix.
ElementMatrix average_operator(const LiftedTriangulation& tri, FieldKind kind,
                               const FluidParams& fluid = {});

/// Largest relative mismatch of edge-normal velocity components between the
/// two sides of interior edges. Diagnostic only: neighboring faces that are
/// not coplanar generally disagree.
double edge_normal_mismatch(const LiftedTriangulation& tri, const ElementField& field);

}  // namespace fissura
