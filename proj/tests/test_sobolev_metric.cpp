#include "menger/error.hpp"
#include "menger/sobolev_metric.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

using namespace menger;
using namespace menger::testing;

TEST(Gagliardo, ExponentWiring) {
  EXPECT_DOUBLE_EQ(sobolev_order(2.5), 1.75);
  const GagliardoMatrix j = assemble_gagliardo(Partition::uniform(8), 3, EnergyParams{});
  EXPECT_EQ(j.kernel_exponent(), 2.5);
  for (double p : {2.4, 2.6}) {
    EnergyParams params;
    params.p = p;
    const GagliardoMatrix jp = assemble_gagliardo(Partition::uniform(8), 3, params);
    EXPECT_NEAR(jp.kernel_exponent(), 3.0 * p - 5.0, 1e-15);
  }
}

TEST(Gagliardo, SawtoothMatchesDoubleSum) {
  // Frozen from tests/oracles/brute_force_values.py: 36 sqrt(3).
  const GagliardoMatrix j = assemble_gagliardo(Partition::uniform(3), 1, EnergyParams{});
  VertexField phi(1, 3);
  phi << 0.0, 1.0 / 3.0, 2.0 / 3.0;
  EXPECT_NEAR(gagliardo_product(j, phi, phi), 62.353829072479582567, 1e-12);
}

TEST(Gagliardo, MatchesDirectDoubleSumNonUniform) {
  const Partition t({0.0, 0.1, 0.35, 0.5, 0.8});
  EnergyParams params;
  params.p = 2.4;
  const GagliardoMatrix j = assemble_gagliardo(t, 1, params);
  std::mt19937_64 rng(1);
  const VertexField phi = random_field(1, 5, rng);
  double direct = 0.0;
  const double expo = 2.0 * sobolev_order(params.p) - 1.0;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      if (a == b) continue;
      const double da = (phi(0, t.head(a)) - phi(0, t.tail(a))) / t.edge_length(a);
      const double db = (phi(0, t.head(b)) - phi(0, t.tail(b))) / t.edge_length(b);
      const double dist = periodic_distance(t.edge_midpoint(a), t.edge_midpoint(b));
      direct += (da - db) * (da - db) * t.edge_length(a) * t.edge_length(b) / std::pow(dist, expo);
    }
  }
  EXPECT_NEAR(gagliardo_product(j, phi, phi), direct, 1e-12 * direct);
}

TEST(Gagliardo, ConstantsInKernel) {
  const GagliardoMatrix j = assemble_gagliardo(Partition::uniform(16), 3, EnergyParams{});
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(16);
  EXPECT_LE((j.block * ones).norm(), 1e-10 * j.block.norm());
  VertexField c(3, 16);
  c.colwise() = Eigen::Vector3d(1.0, -2.0, 0.5);
  EXPECT_LE(j.apply(c).cwiseAbs().maxCoeff(), 1e-12 * j.block.norm());
}

TEST(Gagliardo, SymmetricPositiveSemidefinite) {
  for (int n : {4, 9, 32}) {
    const GagliardoMatrix j = assemble_gagliardo(Partition::uniform(n), 3, EnergyParams{});
    EXPECT_LE((j.block - j.block.transpose()).norm(), 1e-12 * j.block.norm());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(j.block);
    const Eigen::VectorXd ev = eig.eigenvalues();
    EXPECT_GE(ev(0), -1e-10 * ev(n - 1));
    EXPECT_GT(ev(1), 1e-8 * ev(n - 1));
  }
}

TEST(Gagliardo, SingleVertexBumpHasPositiveForm) {
  const GagliardoMatrix j = assemble_gagliardo(Partition::uniform(4), 3, EnergyParams{});
  VertexField phi = VertexField::Zero(3, 4);
  phi(0, 2) = 1.0;
  EXPECT_GT(gagliardo_product(j, phi, phi), 0.0);
}

TEST(Gagliardo, BlockDiagonalEquivalence) {
  const int n = 10;
  const GagliardoMatrix j = assemble_gagliardo(Partition::uniform(n), 3, EnergyParams{});
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < 3; ++c) full(3 * a + c, 3 * b + c) = j.block(a, b);
  std::mt19937_64 rng(2);
  const VertexField phi = random_field(3, n, rng);
  const Eigen::VectorXd expected = full * Eigen::Map<const Eigen::VectorXd>(phi.data(), phi.size());
  const VertexField got = j.apply(phi);
  EXPECT_LE((Eigen::Map<const Eigen::VectorXd>(got.data(), got.size()) - expected).norm(),
            1e-12 * expected.norm());
}

TEST(Gagliardo, ProductProperties) {
  const GagliardoMatrix j = assemble_gagliardo(Partition::uniform(12), 3, EnergyParams{});
  std::mt19937_64 rng(3);
  VertexField c(3, 12);
  c.colwise() = Eigen::Vector3d(2, 3, 4);
  for (int k = 0; k < 20; ++k) {
    const VertexField phi = random_field(3, 12, rng), psi = random_field(3, 12, rng);
    const double pq = gagliardo_product(j, phi, psi), qp = gagliardo_product(j, psi, phi);
    EXPECT_NEAR(pq, qp, 1e-13 * std::abs(pq) + 1e-13);
    const double pp = gagliardo_product(j, phi, phi), qq = gagliardo_product(j, psi, psi);
    EXPECT_LE(pq * pq, pp * qq * (1 + 1e-12));
    EXPECT_GE(pp, 0.0);
    EXPECT_NEAR(gagliardo_product(j, phi, c), 0.0, 1e-10 * std::sqrt(pp) * c.norm());
  }
}

TEST(Gagliardo, DimensionMismatch) {
  const GagliardoMatrix j = assemble_gagliardo(Partition::uniform(5), 3, EnergyParams{});
  EXPECT_THROW(gagliardo_product(j, VertexField::Zero(3, 5), VertexField::Zero(3, 6)), Error);
  EXPECT_THROW(discrete_seminorm(j, VertexField::Zero(3, 4)), Error);
}

TEST(Seminorm, Properties) {
  const GagliardoMatrix j = assemble_gagliardo(Partition::uniform(12), 3, EnergyParams{});
  std::mt19937_64 rng(5);
  const VertexField phi = random_field(3, 12, rng);
  VertexField c(3, 12);
  c.colwise() = Eigen::Vector3d(-1, 0.5, 9);
  const double s = discrete_seminorm(j, phi);
  EXPECT_LE(discrete_seminorm(j, c), 1e-6 * s);
  EXPECT_GT(s, 0.0);
  EXPECT_NEAR(discrete_seminorm(j, phi + c), s, 1e-10 * s);
  EXPECT_NEAR(discrete_seminorm(j, 3.0 * phi), 3.0 * s, 1e-12 * s);
}

TEST(Gagliardo, FingerprintTracksPartition) {
  const GagliardoMatrix a = assemble_gagliardo(Partition::uniform(6), 3, EnergyParams{});
  const GagliardoMatrix b = assemble_gagliardo(Partition({0.0, 0.1, 0.3, 0.5, 0.7, 0.9}), 3, EnergyParams{});
  EXPECT_NE(a.assembled_for, b.assembled_for);
  EXPECT_EQ(a.assembled_for, assemble_gagliardo(Partition::uniform(6), 3, EnergyParams{}).assembled_for);
}
