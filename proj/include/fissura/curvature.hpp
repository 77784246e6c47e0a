#pragma once

#include "fissura/distribution.hpp"
#include "fissura/eigen2.hpp"
#include "fissura/flow_field.hpp"

#include <Eigen/Core>

namespace fissura {

struct EdgeStrain {
  int edge = -1;
  Eigen::Matrix3d tensor = Eigen::Matrix3d::Zero();
  int dropped_quotients = 0;  // of the 9 quotients du_k / dp_l
};

/// Relative size below which a control-point increment counts as zero.
inline constexpr double kQuotientTol = 1e-12;

/// Difference-quotient strain rate across interior edge `edge` (K = left,
/// L = right): D_kl = (du_k/dp_l + du_l/dp_k) / 2, du = u(K) - u(L),
/// dp = p^K - p^L. Quotients over a vanishing increment are dropped.
/// Throws BoundaryEdge on a boundary edge.
EdgeStrain edge_strain(const LiftedTriangulation& tri, const ElementField& field, int edge);

struct Dissipation {
  double value = 0.0;
  int dropped_quotients = 0;
};

/// (2 mu / rho) * sum over interior edges of (|A(s,K)| + |A(s,L)|) D:D.
Dissipation dissipation(const LiftedTriangulation& tri, const ElementField& field, const FluidParams& fluid);

double dissipation_curv(const LiftedTriangulation& tri, const FluidParams& fluid, const MasterVelocity& b);

/// Form assembled from U(i), U(j), U(i + j) for the field produced by `kind`.
EnergyForm assemble_form(const LiftedTriangulation& tri, const FluidParams& fluid, FieldKind kind,
                         int* dropped_quotients = nullptr);

EnergyForm assemble_form_curv(const LiftedTriangulation& tri, const FluidParams& fluid,
                              int* dropped_quotients = nullptr);

/// Two antipodal atoms phi(+-f1) when the spectrum is simple, otherwise the
/// uniform measure on the full parameter circle pushed through phi.
DirectionDistribution preferential_curv(const EnergyForm& form, const LiftedTriangulation& tri);

struct CurvatureAnalysis {
  EnergyForm form;
  int dropped_quotients = 0;
  DirectionDistribution distribution;

  nlohmann::json to_json() const;
};

CurvatureAnalysis analyze_curvature(const LiftedTriangulation& tri, const FluidParams& fluid);

}  // namespace fissura
