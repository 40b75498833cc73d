#pragma once

#include "menger/energy.hpp"
#include "menger/geometry.hpp"

#include <cstdint>

namespace menger {

/// Differentiability order s = 3p/2 - 2 of the energy space.
double sobolev_order(double p);

/// Gram matrix of the discrete Gagliardo product
///
///   <J Phi, Psi> = sum_{I1 != I2} <Phi'(I1) - Phi'(I2), Psi'(I1) - Psi'(I2)>
///                  |I1| |I2| / |m(I1) - m(I2)|^(2s - 1),
///
/// with edge difference quotients Phi'(I) = (Phi(head I) - Phi(tail I)) / |I|
/// and periodic parameter distance between edge midpoints. Spatial
/// components do not interact, so only the N x N block for n = 1 is stored;
/// the full operator applies it to every coordinate row.
struct GagliardoMatrix {
  double s = 0.0;
  Eigen::MatrixXd block;
  int dim = 3;
  std::uint64_t assembled_for = 0;

  double kernel_exponent() const { return 2.0 * s - 1.0; }
  int vertex_count() const { return static_cast<int>(block.rows()); }

  /// Applies J to an n x N vertex field.
  VertexField apply(const VertexField& field) const;
};

GagliardoMatrix assemble_gagliardo(const Partition& partition, int dim, const EnergyParams& params);
GagliardoMatrix assemble_gagliardo(const Polyline& curve, const EnergyParams& params);

/// <J Phi, Psi>. Throws DimensionMismatch.
double gagliardo_product(const GagliardoMatrix& metric, const VertexField& phi,
                         const VertexField& psi);

/// sqrt(<J Phi, Phi>), the discrete fractional seminorm of Phi'.
double discrete_seminorm(const GagliardoMatrix& metric, const VertexField& phi);

}  // namespace menger
