#include "fissura/eigen2.hpp"

#include <algorithm>
#include <cmath>

namespace fissura {

SymEigen2 eigen_sym2(const Eigen::Matrix2d& m) {
  const double a = m(0, 0), b = m(0, 1), c = m(1, 1);
  const double mean = 0.5 * (a + c);
  const double half_diff = 0.5 * (a - c);
  const double r = std::hypot(half_diff, b);
  SymEigen2 out;
  out.values = {mean - r, mean + r};
  if (r == 0.0) {
    out.vectors.setIdentity();
    return out;
  }
  // Eigenvector of the larger eigenvalue, from whichever row is better conditioned.
  Eigen::Vector2d v;
  if (half_diff >= 0.0)
    v = {half_diff + r, b};
  else
    v = {b, r - half_diff};
  v.normalize();
  out.vectors.col(1) = v;
  out.vectors.col(0) = Eigen::Vector2d(v.y(), -v.x());
  return out;
}

EnergyForm EnergyForm::from_matrix(const Eigen::Matrix2d& m) {
  EnergyForm f;
  const double off = 0.5 * (m(0, 1) + m(1, 0));
  f.matrix << m(0, 0), off, off, m(1, 1);
  const SymEigen2 e = eigen_sym2(f.matrix);
  f.raw_min_eigenvalue = e.values(0);
  auto clamp = [](double l) { return (l < 0.0 && l >= -kClampTol) ? 0.0 : l; };
  f.lambda1 = clamp(e.values(0));
  f.lambda2 = clamp(e.values(1));
  f.f1 = e.vectors.col(0);
  f.f2 = e.vectors.col(1);
  return f;
}

EnergyForm EnergyForm::from_polarization(double u_i, double u_j, double u_ij) {
  Eigen::Matrix2d m;
  const double m12 = 0.5 * (u_ij - u_i - u_j);
  m << u_i, m12, m12, u_j;
  return from_matrix(m);
}

double EnergyForm::spectral(const Eigen::Vector2d& b) const {
  const double p1 = b.dot(f1), p2 = b.dot(f2);
  return lambda1 * p1 * p1 + lambda2 * p2 * p2;
}

bool EnergyForm::degenerate() const { return lambda2 - lambda1 <= kDegRel * std::max(lambda2, kDegAbs); }

nlohmann::json EnergyForm::to_json() const {
  return {{"matrix", {{matrix(0, 0), matrix(0, 1)}, {matrix(1, 0), matrix(1, 1)}}},
          {"lambda1", lambda1},
          {"lambda2", lambda2},
          {"f1", {f1.x(), f1.y()}},
          {"f2", {f2.x(), f2.y()}}};
}

}  // namespace fissura
