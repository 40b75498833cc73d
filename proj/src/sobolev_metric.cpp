#include "menger/sobolev_metric.hpp"

#include "detail.hpp"
#include "menger/error.hpp"

#include <cmath>
#include <string>

namespace menger {

double sobolev_order(double p) { return 1.5 * p - 2.0; }

VertexField GagliardoMatrix::apply(const VertexField& field) const {
  if (field.cols() != block.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "vertex field size does not match metric");
  }
  // block is symmetric, so (J Phi_c)^T = Phi_c^T J for every coordinate row c.
  return field * block;
}

GagliardoMatrix assemble_gagliardo(const Partition& partition, int dim, const EnergyParams& params) {
  params.validate();
  const int n = partition.size();
  GagliardoMatrix J;
  J.s = sobolev_order(params.p);
  J.dim = dim;
  J.assembled_for = detail::fnv1a(&J.s, sizeof(J.s), partition.fingerprint());
  const double exponent = J.kernel_exponent();

  // With weights w_12 = |I1| |I2| / dist^(2s-1) the ordered double sum equals
  // 2 D^T L D, where D maps vertex values to difference quotients and L is
  // the weighted graph Laplacian over edges.
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double dist = periodic_distance(partition.edge_midpoint(a), partition.edge_midpoint(b));
      if (!(dist > 0.0)) {
        throw Error(ErrorKind::MidpointCoincidence,
                    "edges " + std::to_string(a) + " and " + std::to_string(b) +
                        " share a parameter midpoint");
      }
      const double w = partition.edge_length(a) * partition.edge_length(b) / std::pow(dist, exponent);
      laplacian(a, b) = -w;
      laplacian(b, a) = -w;
      laplacian(a, a) += w;
      laplacian(b, b) += w;
    }
  }
  Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double inv = 1.0 / partition.edge_length(i);
    diff(i, partition.tail(i)) -= inv;
    diff(i, partition.head(i)) += inv;
  }
  J.block = 2.0 * diff.transpose() * laplacian * diff;
  // Exact symmetry regardless of product rounding.
  J.block = 0.5 * (J.block + J.block.transpose()).eval();
  return J;
}

GagliardoMatrix assemble_gagliardo(const Polyline& curve, const EnergyParams& params) {
  return assemble_gagliardo(curve.partition(), curve.dim(), params);
}

double gagliardo_product(const GagliardoMatrix& metric, const VertexField& phi,
                         const VertexField& psi) {
  if (phi.rows() != psi.rows() || phi.cols() != psi.cols() || phi.cols() != metric.block.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "gagliardo_product operands differ in shape");
  }
  return (phi * metric.block).cwiseProduct(psi).sum();
}

double discrete_seminorm(const GagliardoMatrix& metric, const VertexField& phi) {
  return std::sqrt(std::max(0.0, gagliardo_product(metric, phi, phi)));
}

}  // namespace menger
