#pragma once

#include "menger/geometry.hpp"

#include <Eigen/SparseCore>

namespace menger {

/// Per-edge logarithmic strain log(l_P(I) / |I|).
struct StrainVector {
  Eigen::VectorXd values;

  int size() const { return static_cast<int>(values.size()); }
};

/// Jacobian of the strain map, N x (nN) with exactly 2nN stored entries.
/// Columns use the vertex-major, coordinate-minor ordering v * n + c.
struct StrainJacobian {
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
  int dim = 3;

  /// B Phi for an n x N vertex field.
  Eigen::VectorXd apply(const VertexField& field) const;
  /// B^T lambda as an n x N vertex field.
  VertexField apply_transpose(const Eigen::VectorXd& multipliers) const;
};

/// Discrete barycenter map C Phi = 1/2 sum_I (Phi(tail I) + Phi(head I)) |I|,
/// stored densely as n x (nN).
struct BarycenterJacobian {
  Eigen::MatrixXd matrix;
  int dim = 3;

  Eigen::VectorXd apply(const VertexField& field) const;
};

/// Throws DegenerateEdge on a zero-length edge.
StrainVector log_strain(const Polyline& curve);

/// Throws DegenerateEdge on a zero-length edge.
StrainJacobian log_strain_jacobian(const Polyline& curve);

BarycenterJacobian barycenter_jacobian(const Partition& partition, int dim);

/// max_I |Sigma(P)_I - reference_I|. Throws DimensionMismatch.
double constraint_violation(const Polyline& curve, const StrainVector& reference);

/// Flattens an n x N field into the vertex-major vector of length nN.
inline Eigen::Map<const Eigen::VectorXd> flatten(const VertexField& field) {
  return {field.data(), field.size()};
}

inline VertexField unflatten(const Eigen::VectorXd& flat, int dim) {
  return Eigen::Map<const Eigen::MatrixXd>(flat.data(), dim, flat.size() / dim);
}

}  // namespace menger
