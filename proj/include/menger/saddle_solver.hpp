#pragma once

#include "menger/constraints.hpp"
#include "menger/sobolev_metric.hpp"

#include <Eigen/LU>

#include <cstdint>
#include <optional>

namespace menger {

struct SaddleSolution {
  VertexField primal;                     // n x N
  Eigen::VectorXd strain_multipliers;     // N, one per edge
  Eigen::VectorXd barycenter_multipliers; // n
};

/// Symmetric indefinite KKT matrix
///
///   [ J  B^T  C^T ]
///   [ B   0    0  ]
///   [ C   0    0  ]
///
/// of size (n+1)N + n. Unknowns are ordered vertex-major and coordinate-minor
/// for the primal block, then edge multipliers, then barycenter multipliers.
/// The barycenter rows remove the constant fields from the kernel of J.
class SaddleSystem {
 public:
  /// Throws DimensionMismatch.
  SaddleSystem(const GagliardoMatrix& metric, const StrainJacobian& strain,
               const BarycenterJacobian& bary, std::uint64_t base_point_fingerprint = 0);

  int dimension() const { return static_cast<int>(matrix_.rows()); }
  int vertex_count() const { return vertex_count_; }
  int dim() const { return dim_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  std::uint64_t base_point_fingerprint() const { return fingerprint_; }

  /// Dense LU with partial pivoting. Throws SingularSystem when the
  /// reciprocal condition estimate falls below `min_rcond`.
  void factorize(double min_rcond = 1e-18);
  bool is_factorized() const { return lu_.has_value(); }
  /// Reciprocal condition number estimate (1-norm) of the last factorization.
  double rcond() const { return rcond_; }
  int factorization_count() const { return factorizations_; }
  int solve_count() const { return solves_; }

  /// Back substitution with the stored factors.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  /// Right-hand side (dE, 0, 0): the primal part is the projected gradient.
  SaddleSolution solve_projected_gradient(const VertexField& differential) const;

  /// Right-hand side (0, violation, 0): the modified Newton update.
  SaddleSolution solve_restoration(const Eigen::VectorXd& violation) const;

 private:
  SaddleSolution split(const Eigen::VectorXd& x) const;

  Eigen::MatrixXd matrix_;
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
  int vertex_count_ = 0;
  int dim_ = 0;
  std::uint64_t fingerprint_ = 0;
  double rcond_ = 0.0;
  int factorizations_ = 0;
  mutable int solves_ = 0;
};

SaddleSystem assemble_saddle(const GagliardoMatrix& metric, const StrainJacobian& strain,
                             const BarycenterJacobian& bary);

/// Convenience: assemble and factorize at a given curve with a prebuilt metric.
SaddleSystem build_saddle(const Polyline& curve, const GagliardoMatrix& metric);

}  // namespace menger
