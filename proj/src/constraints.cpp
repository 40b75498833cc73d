#include "menger/constraints.hpp"

#include "menger/error.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace menger {

namespace {

void require_positive(double length, int edge) {
  if (!(length > 0.0)) {
    throw Error(ErrorKind::DegenerateEdge, "edge " + std::to_string(edge) + " has zero length");
  }
}

}  // namespace

Eigen::VectorXd StrainJacobian::apply(const VertexField& field) const {
  if (field.size() != matrix.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "field does not match strain Jacobian");
  }
  return matrix * flatten(field);
}

VertexField StrainJacobian::apply_transpose(const Eigen::VectorXd& multipliers) const {
  if (multipliers.size() != matrix.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "multipliers do not match strain Jacobian");
  }
  const Eigen::VectorXd flat = matrix.transpose() * multipliers;
  return unflatten(flat, dim);
}

Eigen::VectorXd BarycenterJacobian::apply(const VertexField& field) const {
  if (field.size() != matrix.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "field does not match barycenter Jacobian");
  }
  return matrix * flatten(field);
}

StrainVector log_strain(const Polyline& curve) {
  const auto& T = curve.partition();
  StrainVector out{Eigen::VectorXd(curve.size())};
  for (int i = 0; i < curve.size(); ++i) {
    const double len = edge_length(curve, i);
    require_positive(len, i);
    out.values(i) = std::log(len / T.edge_length(i));
  }
  return out;
}

StrainJacobian log_strain_jacobian(const Polyline& curve) {
  const int n = curve.size();
  const int dim = curve.dim();
  const auto& T = curve.partition();
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * static_cast<std::size_t>(n) * dim);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd e = curve.edge_vector(i);
    const double len = e.norm();
    require_positive(len, i);
    // d/dP(tail) = -tau^T / l, d/dP(head) = +tau^T / l, tau = e / l
    const Eigen::VectorXd row = e / (len * len);
    for (int c = 0; c < dim; ++c) {
      entries.emplace_back(i, T.tail(i) * dim + c, -row(c));
      entries.emplace_back(i, T.head(i) * dim + c, row(c));
    }
  }
  StrainJacobian B;
  B.dim = dim;
  B.matrix.resize(n, static_cast<Eigen::Index>(n) * dim);
  B.matrix.setFromTriplets(entries.begin(), entries.end());
  B.matrix.makeCompressed();
  return B;
}

BarycenterJacobian barycenter_jacobian(const Partition& partition, int dim) {
  const int n = partition.size();
  BarycenterJacobian C;
  C.dim = dim;
  C.matrix = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(n) * dim);
  for (int i = 0; i < n; ++i) {
    const double half = 0.5 * partition.edge_length(i);
    for (int c = 0; c < dim; ++c) {
      C.matrix(c, partition.tail(i) * dim + c) += half;
      C.matrix(c, partition.head(i) * dim + c) += half;
    }
  }
  return C;
}

double constraint_violation(const Polyline& curve, const StrainVector& reference) {
  if (reference.size() != curve.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "reference strain has " + std::to_string(reference.size()) + " entries, curve has " +
                    std::to_string(curve.size()) + " edges");
  }
  return (log_strain(curve).values - reference.values).lpNorm<Eigen::Infinity>();
}

}  // namespace menger
