#include "fissura/errors.hpp"
#include "fissura/flow_field.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace fissura;
using namespace testing_support;

TEST_CASE("element_matrix: horizontal face embeds the master velocity") {
  const ElementMatrix m = element_matrix({0, 0, 1});
  CHECK(m.col(0) == Eigen::Vector3d(1, 0, 0));
  CHECK(m.col(1) == Eigen::Vector3d(0, 1, 0));
}

TEST_CASE("element_matrix: face tilted about the y axis") {
  for (double alpha : {0.1, 0.7, 1.3}) {
    const Eigen::Vector3d n(-std::sin(alpha), 0, std::cos(alpha));
    const ElementMatrix m = element_matrix(n);
    CHECK((m * Eigen::Vector2d(1, 0) - Eigen::Vector3d(std::cos(alpha), 0, std::sin(alpha))).norm() < 1e-15);
    CHECK((m * Eigen::Vector2d(0, 1) - Eigen::Vector3d(0, 1, 0)).norm() == 0.0);
  }
}

TEST_CASE("element_matrix: invalid normals") {
  CHECK_THROWS_AS(element_matrix({0, 0, 2}), InvalidNormal);
  CHECK_THROWS_AS(element_matrix({0, 0, -1}), InvalidNormal);
  CHECK_THROWS_AS(element_matrix({1, 0, 0}), InvalidNormal);
  CHECK_NOTHROW(element_matrix(Eigen::Vector3d(0, 0, 1 + 5e-10)));
}

TEST_CASE("element_matrix: norm, tangency and T-component preservation") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Vector3d n = random_normal(rng);
    const ElementMatrix m = element_matrix(n);
    const Eigen::Vector3d xi = n.cross(Eigen::Vector3d::UnitZ());
    for (int j = 0; j < 10; ++j) {
      const Eigen::Vector2d b = random_unit2(rng);
      const Eigen::Vector3d u = m * b;
      CHECK(std::abs(u.norm() - 1.0) < 1e-12);
      CHECK(std::abs(u.dot(n)) < 1e-12);
      if (xi.norm() > 1e-12) {
        const Eigen::Vector3d x = xi.normalized();
        CHECK(std::abs(u.dot(x) - Eigen::Vector3d(b.x(), b.y(), 0).dot(x)) < 1e-12);
      }
      // (Vb).b = |b|^2 - (n1 a1 + n2 a2)^2 / (1 + n3) >= 0
      const double s = n.x() * b.x() + n.y() * b.y();
      CHECK(std::abs(u.head<2>().dot(b) - (1.0 - s * s / (1.0 + n.z()))) < 1e-12);
      CHECK(u.head<2>().dot(b) >= -1e-14);
    }
  }
}

TEST_CASE("apply_V: flat and ridge fields") {
  const auto flat = lifted(SurfaceSpec::plane(unit_square(), 0, 0), 0.2, 0.1);
  const ElementField f = apply_V(flat, {0.6, 0.8});
  for (const auto& u : f.u) CHECK(u == Eigen::Vector3d(0.6, 0.8, 0));

  const auto ridge = lifted(SurfaceSpec::ridge(unit_square(), 0.3, 1.0), 0.1);
  for (const auto& u : apply_V(ridge, {0, 1}).u) CHECK(u == Eigen::Vector3d(0, 1, 0));
}

TEST_CASE("apply_V and apply_G are linear") {
  std::mt19937_64 rng(8);
  const auto tri = lifted(random_surface(rng), 0.12, 0.2, 3);
  const FluidParams fluid;
  const Eigen::Vector2d b1 = random_unit2(rng), b2 = random_unit2(rng);
  const double alpha = 0.7, beta = -1.3;
  const ElementField v = apply_V(tri, alpha * b1 + beta * b2);
  const ElementField v1 = apply_V(tri, b1), v2 = apply_V(tri, b2);
  const ElementField g = apply_G(tri, alpha * b1 + beta * b2, fluid);
  const ElementField g1 = apply_G(tri, b1, fluid), g2 = apply_G(tri, b2, fluid);
  const ElementField neg = apply_V(tri, -b1);
  for (std::size_t k = 0; k < tri.size(); ++k) {
    CHECK((v.u[k] - (alpha * v1.u[k] + beta * v2.u[k])).norm() < 1e-12);
    CHECK((g.u[k] - (alpha * g1.u[k] + beta * g2.u[k])).norm() < 1e-12 * g.u[k].norm() + 1e-12);
    CHECK(neg.u[k] == -v1.u[k]);
    CHECK(std::abs(v1.u[k].dot(tri.normals[k])) < 1e-12);
    CHECK(std::abs(g1.u[k].dot(tri.normals[k])) < 1e-12 * g1.u[k].norm());
  }
}

TEST_CASE("apply_G: magnitudes") {
  const FluidParams fluid;
  const auto flat = lifted(SurfaceSpec::plane(unit_square(), 0, 0, 0.4), 0.2, 0.1);
  const ElementField gf = apply_G(flat, {0.6, 0.8}, fluid), vf = apply_V(flat, {0.6, 0.8});
  for (std::size_t k = 0; k < flat.size(); ++k) CHECK((gf.u[k] - vf.u[k]).norm() < 1e-14);

  const auto slope = lifted(SurfaceSpec::plane(unit_square(), 1.0, 0.0), 0.15, 0.1, 4);
  const auto s = gravity_speed_factors(slope, fluid);
  double zmax = -1e300;
  for (const auto& p : slope.control_points) zmax = std::max(zmax, p.z());
  const ElementField g = apply_G(slope, {1, 0}, fluid);
  bool top_found = false;
  for (std::size_t k = 0; k < slope.size(); ++k) {
    const double expected = std::sqrt(2.0 * fluid.g * (1.0 / (2.0 * fluid.g) + zmax - slope.control_points[k].z()));
    CHECK(s[k] == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(g.u[k].norm() - expected) <= 1e-12 * expected);
    if (slope.control_points[k].z() == zmax) {
      CHECK(s[k] == doctest::Approx(1.0).epsilon(1e-15));
      top_found = true;
    }
    for (std::size_t l = 0; l < slope.size(); ++l)
      if (slope.control_points[l].z() > slope.control_points[k].z() + 1e-12) CHECK(s[l] < s[k]);
  }
  CHECK(top_found);
}

TEST_CASE("average velocity") {
  const auto flat = lifted(SurfaceSpec::plane(unit_square(), 0, 0), 0.2, 0.1);
  CHECK((average(flat, apply_V(flat, {1, 0})) - Eigen::Vector3d(1, 0, 0)).norm() < 1e-14);

  const Mesh2D single = make_mesh({{0, 0}, {1, 0}, {0.4, 0.8}}, {{{0, 1, 2}}});
  const SurfaceSpec tilt = SurfaceSpec::plane(unit_square(), 0.3, -0.2);
  const LiftedTriangulation one = lift(single, tilt);
  const ElementField f = apply_V(one, {0.6, 0.8});
  CHECK((average(one, f) - f.u[0]).norm() < 1e-15);

  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 5; ++rep) {
    const auto tri = lifted(random_surface(rng), 0.12, 0.2, rep);
    const ElementMatrix L = average_operator(tri, FieldKind::curvature_V);
    const ElementMatrix G = average_operator(tri, FieldKind::gravity_G, FluidParams{});
    for (int j = 0; j < 20; ++j) {
      const Eigen::Vector2d b = random_unit2(rng);
      const Eigen::Vector3d m = average(tri, apply_V(tri, b));
      CHECK(m.head<2>().dot(b) > 0.0);
      CHECK((L * b - m).norm() < 1e-14);
      CHECK((G * b - average(tri, apply_G(tri, b, FluidParams{}))).norm() < 1e-13);
    }
  }
}

TEST_CASE("fluid parameters must be positive") {
  CHECK_NOTHROW(FluidParams{}.validate());
  CHECK_THROWS_AS((FluidParams{0.0, 1e3, 9.81, 1.0}.validate()), InvalidFluid);
  CHECK_THROWS_AS((FluidParams{1e-3, -1.0, 9.81, 1.0}.validate()), InvalidFluid);
  CHECK_THROWS_AS((FluidParams{1e-3, 1e3, 0.0, 1.0}.validate()), InvalidFluid);
  CHECK_THROWS_AS((FluidParams{1e-3, 1e3, 9.81, 0.0}.validate()), InvalidFluid);
}

TEST_CASE("edge-normal mismatch diagnostic") {
  const auto flat = lifted(SurfaceSpec::plane(unit_square(), 0, 0), 0.2, 0.1);
  CHECK(edge_normal_mismatch(flat, apply_V(flat, {1, 0})) < 1e-14);
  const auto ridge = lifted(SurfaceSpec::ridge(unit_square(), 0.3, 1.0), 0.1, 0.1);
  const double m = edge_normal_mismatch(ridge, apply_V(ridge, {1, 0}));
  CHECK(std::isfinite(m));
  CHECK(m > 0.0);
}
