#include "menger/error.hpp"
#include "menger/geometry.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace menger;
using namespace menger::testing;

TEST(Partition, UniformLengthsSumToOne) {
  const Partition t = Partition::uniform(7);
  double sum = 0.0;
  for (int i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t.edge_length(i), 1.0 / 7.0);
    sum += t.edge_length(i);
  }
  EXPECT_NEAR(sum, 1.0, 1e-14 * 7);
  EXPECT_TRUE(t.is_uniform());
}

TEST(Partition, WrappingEdgeLength) {
  const Partition t({0.1, 0.3, 0.6, 0.9});
  EXPECT_NEAR(t.edge_length(3), 0.2, 1e-15);
  EXPECT_FALSE(t.is_uniform());
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += t.edge_length(i);
  EXPECT_NEAR(sum, 1.0, 1e-14);
}

TEST(Partition, RejectsInvalidParameters) {
  EXPECT_THROW(Partition::uniform(2), Error);
  EXPECT_THROW(Partition({0.0, 0.5}), Error);
  EXPECT_THROW(Partition({0.0, 0.5, 0.5}), Error);
  EXPECT_THROW(Partition({0.0, 0.7, 0.3}), Error);
  EXPECT_THROW(Partition({0.0, 0.5, 1.2}), Error);
}

TEST(Partition, PeriodicDistanceIsSymmetricAndBounded) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double a = u(rng), b = u(rng);
    EXPECT_EQ(periodic_distance(a, b), periodic_distance(b, a));
    EXPECT_LE(periodic_distance(a, b), 0.5);
  }
  EXPECT_NEAR(periodic_distance(0.95, 0.05), 0.1, 1e-15);
}

TEST(Geometry, EdgeLengths) {
  const Polyline sq = unit_square();
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(edge_length(sq, i), 1.0);
  EXPECT_DOUBLE_EQ(edge_length(equilateral_triangle(2.0), 1), 2.0);
  VertexField pts(3, 3);
  pts << 0, 0, 1, 0, 0, 1, 0, 0, 0;
  EXPECT_EQ(edge_length(Polyline(pts), 0), 0.0);
  EXPECT_FALSE(is_regular(Polyline(pts)));
}

TEST(Geometry, UnitEdgeVector) {
  EXPECT_TRUE(unit_edge_vector(unit_square(), 0).isApprox(Eigen::Vector3d(1, 0, 0)));
  VertexField pts(3, 3);
  pts << 0, 3, 0, 0, 4, 1, 0, 0, 0;
  const Eigen::VectorXd t = unit_edge_vector(Polyline(pts), 0);
  EXPECT_NEAR((t - Eigen::Vector3d(0.6, 0.8, 0.0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(t.norm(), 1.0, 1e-15);
  pts.col(1) = pts.col(0);
  try {
    unit_edge_vector(Polyline(pts), 0);
    FAIL() << "expected DegenerateEdge";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateEdge);
  }
}

TEST(Geometry, Midpoints) {
  const EdgeMidpoint m = midpoints(unit_square(), 0);
  EXPECT_TRUE(m.spatial.isApprox(Eigen::Vector3d(0.5, 0, 0)));
  EXPECT_DOUBLE_EQ(m.param, 0.125);
  // Wrapping edge [0.875, 1) u [0, 0.125).
  VertexField pts = unit_square().points();
  const Polyline shifted(pts, Partition({0.125, 0.375, 0.625, 0.875}));
  EXPECT_NEAR(midpoints(shifted, 3).param, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(midpoints(equilateral_triangle(), 0).param, 1.0 / 6.0);
}

TEST(Geometry, BilipschitzSquare) {
  // Frozen from tests/oracles/brute_force_values.py.
  EXPECT_NEAR(bilipschitz_constant(unit_square()), 2.8284271247461900976, 1e-15);
}

TEST(Geometry, BilipschitzCoincidentVerticesIsZero) {
  VertexField pts(3, 4);
  pts << 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0;
  EXPECT_EQ(bilipschitz_constant(Polyline(pts)), 0.0);
}

TEST(Geometry, BilipschitzIsHomogeneous) {
  const Polyline knot = generate_torus_knot(2, 3, 40);
  const double b = bilipschitz_constant(knot);
  for (double mu : {0.3, 2.0, 7.5}) {
    EXPECT_NEAR(bilipschitz_constant(knot.with_points(mu * knot.points())), mu * b, 1e-12 * mu * b);
  }
}

TEST(Geometry, BilipschitzBelowEdgeSpeeds) {
  const Polyline knot = add_vertex_noise(generate_torus_knot(2, 3, 30), 0.05, 1);
  const GeometryDiagnostics d = diagnose_geometry(knot);
  double min_speed = 1e300;
  for (int i = 0; i < knot.size(); ++i) {
    min_speed = std::min(min_speed, edge_length(knot, i) / knot.partition().edge_length(i));
  }
  EXPECT_LE(d.bilipschitz, min_speed);
}

TEST(Geometry, TurningAngles) {
  for (double a : turning_angles(unit_square())) EXPECT_NEAR(a, M_PI / 2, 1e-15);
  // Frozen from tests/oracles/brute_force_values.py.
  for (double a : turning_angles(regular_polygon(6))) EXPECT_NEAR(a, 1.0471975511965977462, 1e-14);
  VertexField pts(3, 4);
  pts << 0, 1, 2, 1, 0, 0, 0, 1, 0, 0, 0, 0;
  EXPECT_NEAR(turning_angles(Polyline(pts))[1], 0.0, 1e-15);
  pts.col(2) = pts.col(1);
  EXPECT_THROW(turning_angles(Polyline(pts)), Error);
}

TEST(Geometry, Barycenter) {
  EXPECT_TRUE(barycenter(unit_square()).isApprox(Eigen::Vector3d(0.5, 0.5, 0.0)));
  const Eigen::Vector3d c(0.3, -2.0, 5.0);
  const Polyline knot = generate_torus_knot(2, 3, 24);
  const Polyline moved = knot.with_points(knot.points().colwise() + c);
  EXPECT_LE((barycenter(moved) - barycenter(knot) - c).cwiseAbs().maxCoeff(), 1e-14);
  VertexField same(3, 5);
  same.colwise() = c;
  EXPECT_LE((barycenter(Polyline(same)) - c).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Geometry, BarycenterNonUniformTrapezoid) {
  VertexField pts(3, 3);
  pts << 0, 1, 0, 0, 0, 1, 0, 0, 0;
  const Polyline curve(pts, Partition({0.0, 0.5, 0.75}));
  // 1/2 * sum over edges of (P(tail) + P(head)) |I|, evaluated by hand.
  const Eigen::Vector3d expected(0.5 * (1 * 0.5 + 1 * 0.25), 0.5 * (1 * 0.25 + 1 * 0.25), 0.0);
  EXPECT_TRUE(barycenter(curve).isApprox(expected));
}

TEST(Geometry, ThetaSquare) {
  EXPECT_NEAR(theta_min_eigenvalue(unit_square()), 0.5, 1e-14);
}

TEST(Geometry, ThetaRotationInvariantAndInUnitInterval) {
  const Polyline knot = generate_torus_knot(2, 3, 60);
  const double base = theta_min_eigenvalue(knot);
  EXPECT_GE(base, 0.0);
  EXPECT_LE(base, 1.0);
  const Polyline rotated = knot.with_points(rotation(0.3, -1.1, 2.0) * knot.points());
  EXPECT_NEAR(theta_min_eigenvalue(rotated), base, 1e-12);
}

TEST(Geometry, ThetaAboveLowerBound) {
  const Polyline knot = generate_torus_knot(3, 2, 96);
  EXPECT_GE(theta_min_eigenvalue(knot), theta_eigenvalue_lower_bound(tangent_holder_constant(knot)));
}

TEST(Geometry, ClosedCurveTangentIdentity) {
  const Polyline knot = add_vertex_noise(generate_torus_knot(5, 3, 80), 0.1, 9);
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (int i = 0; i < knot.size(); ++i) sum += edge_length(knot, i) * unit_edge_vector(knot, i);
  EXPECT_LE(sum.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Generators, TorusKnot) {
  const Polyline trefoil = generate_torus_knot(2, 3, 48);
  EXPECT_EQ(trefoil.size(), 48);
  EXPECT_TRUE(is_regular(trefoil));
  EXPECT_FALSE(find_self_intersection(trefoil, 1e-9 * diameter(trefoil)));
  EXPECT_TRUE(trefoil.point(0).isApprox(Eigen::Vector3d(3, 0, 0)));
  const Polyline circle = generate_torus_knot(1, 0, 12);
  for (int v = 0; v < 12; ++v) {
    EXPECT_NEAR(circle.point(v).head<2>().norm(), 3.0, 1e-14);
    EXPECT_NEAR(circle.point(v)(2), 0.0, 1e-14);
  }
  const Polyline fig3 = generate_torus_knot(5, 3, 240);
  EXPECT_TRUE(is_regular(fig3));
  EXPECT_THROW(generate_torus_knot(2, 4, 48), Error);
  EXPECT_THROW(generate_torus_knot(2, 3, 2), Error);
  EXPECT_THROW(generate_torus_knot(2, 3, 48, 1.0, 1.0), Error);
}

TEST(Generators, SquareKnotIsEmbedded) {
  const Polyline knot = generate_square_knot(600);
  EXPECT_EQ(knot.size(), 600);
  EXPECT_FALSE(find_self_intersection(knot, 1e-9 * diameter(knot)));
  const Polyline noisy = add_vertex_noise(knot, 0.05, 7);
  EXPECT_TRUE(is_regular(noisy));
  EXPECT_GT(min_edge_length(noisy), 0.0);
}

TEST(Generators, NoiseIsDeterministic) {
  const Polyline knot = generate_torus_knot(2, 3, 30);
  EXPECT_EQ(add_vertex_noise(knot, 0.0, 5).points(), knot.points());
  const Polyline a = add_vertex_noise(knot, 0.1, 42), b = add_vertex_noise(knot, 0.1, 42);
  EXPECT_EQ(a.points(), b.points());
  EXPECT_NE(a.points(), add_vertex_noise(knot, 0.1, 43).points());
  EXPECT_LE((a.points() - knot.points()).cwiseAbs().maxCoeff(), 0.1);
}
