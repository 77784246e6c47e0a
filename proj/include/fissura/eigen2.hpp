#pragma once

#include <Eigen/Core>

#include <json.hpp>

namespace fissura {

struct SymEigen2 {
  Eigen::Vector2d values;   // ascending
  Eigen::Matrix2d vectors;  // columns are orthonormal eigenvectors
};

/// Closed-form eigen-decomposition of a symmetric 2x2 matrix (upper triangle read).
SymEigen2 eigen_sym2(const Eigen::Matrix2d& m);

/// Symmetric positive semi-definite quadratic form U(b) = b^T M b with its
/// spectrum. Eigenvalues within -kClampTol of zero are clamped to zero.
struct EnergyForm {
  static constexpr double kClampTol = 1e-10;
  static constexpr double kDegRel = 1e-9;
  static constexpr double kDegAbs = 1e-14;

  Eigen::Matrix2d matrix = Eigen::Matrix2d::Zero();
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Eigen::Vector2d f1 = Eigen::Vector2d::UnitX();
  Eigen::Vector2d f2 = Eigen::Vector2d::UnitY();
  double raw_min_eigenvalue = 0.0;  // before clamping

  static EnergyForm from_matrix(const Eigen::Matrix2d& m);
  /// Polarization: M11 = U(i), M22 = U(j), M12 = (U(i + j) - M11 - M22) / 2.
  static EnergyForm from_polarization(double u_i, double u_j, double u_ij);

  double operator()(const Eigen::Vector2d& b) const { return b.dot(matrix * b); }
  /// U through the spectrum: lambda1 (b.f1)^2 + lambda2 (b.f2)^2.
  double spectral(const Eigen::Vector2d& b) const;
  /// lambda2 - lambda1 <= kDegRel * max(lambda2, kDegAbs).
  bool degenerate() const;

  nlohmann::json to_json() const;
};

}  // namespace fissura
