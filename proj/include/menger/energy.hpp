#pragma once

#include "menger/geometry.hpp"

#include <cstdint>

namespace menger {

/// Parameters of the generalized integral Menger energy with q = 2.
struct EnergyParams {
  double p = 2.5;
  static constexpr double q = 2.0;
  /// Relative collision guard: midpoint distances below this times the
  /// curve diameter are treated as a collision.
  double degenerate_threshold = 1e-12;
  /// Permit p outside (7/3, 8/3).
  bool allow_any_p = false;
  /// Worker count for the triple loops; 0 picks the hardware concurrency.
  int threads = 1;

  /// Throws InvalidParams.
  void validate() const;
};

/// The exponent p in (7/3, 8/3) where the Hilbert-space theory applies.
bool p_in_admissible_range(double p);

/// Inverse generalized circumdiameter |(y-x)^(z-x)|^2 / (|x-y||y-z||z-x|)^p.
///
/// With p = q this is (2R)^(-p) for the circumradius R, which fixes the
/// normalization M_p = 2^p M^(p,p). Collinear distinct points give 0.
/// Throws MidpointCollision when a pairwise distance is below `collision_distance`.
double kernel_rpq_inverse(const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& y,
                          const Eigen::Ref<const Eigen::VectorXd>& z, const EnergyParams& params,
                          double collision_distance = 0.0);

/// l(I1) l(I2) l(I3) / R^(p,2)(m(I1), m(I2), m(I3)), evaluated with the
/// indices sorted so every permutation gives the same bits.
/// Throws NonDistinctEdges for repeated indices.
double local_contribution(const Polyline& curve, int edge1, int edge2, int edge3,
                          const EnergyParams& params);

/// Sum of local contributions over all ordered triples of mutually distinct
/// edges, computed as 6 times the sum over unordered triples.
double total_energy(const Polyline& curve, const EnergyParams& params);

struct EnergyReport {
  double value = 0.0;
  /// n x N; column v is the partial derivative with respect to P(v).
  VertexField differential;
  std::int64_t triple_count = 0;
};

/// Energy and its exact differential from closed-form partials of each
/// local contribution with respect to its six endpoints.
EnergyReport energy_differential(const Polyline& curve, const EnergyParams& params);

/// Central differences of total_energy per vertex coordinate with step h.
VertexField finite_difference_differential(const Polyline& curve, const EnergyParams& params,
                                           double h);

}  // namespace menger
