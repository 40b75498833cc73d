#pragma once

#include "menger/geometry.hpp"

#include <optional>
#include <string>
#include <utility>

namespace menger {

/// Margins for certifying the linear homotopy F(., l) = (1 - l) P + l Q.
/// Lengths are relative to the larger diameter of the two curves.
struct IsotopyPolicy {
  double edge_floor = 1e-9;
  double angle_margin = 0.1;
  int angle_samples = 16;
  double contact_tolerance = 1e-9;
};

struct Collision {
  double lambda = 0.0;
  int edge_a = 0;
  int edge_b = 0;
};

struct HomotopyCertificate {
  bool passed = false;
  double min_edge_length_over_lambda = 0.0;
  double max_turning_angle_over_lambda = 0.0;
  std::optional<double> first_collision_lambda;
  std::optional<std::pair<int, int>> failing_pair;
  /// Empty when passed; otherwise names the first failed check.
  std::string failure;
};

/// Segment whose endpoints move linearly: start(l) = (1-l) start0 + l start1.
struct MovingSegment {
  Eigen::VectorXd start0, end0, start1, end1;

  Eigen::VectorXd start(double lambda) const { return (1.0 - lambda) * start0 + lambda * start1; }
  Eigen::VectorXd end(double lambda) const { return (1.0 - lambda) * end0 + lambda * end1; }
  /// Bound on the speed of every point of the segment.
  double max_speed() const;
};

/// Euclidean distance between segments [p0, p1] and [q0, q1] in any dimension.
double segment_distance(const Eigen::VectorXd& p0, const Eigen::VectorXd& p1,
                        const Eigen::VectorXd& q0, const Eigen::VectorXd& q1);

/// Earliest l in [0, 1] at which the two moving segments come within
/// `tolerance` of each other, if any.
///
/// In R^3 every contact time is a root of the coplanarity cubic
/// det[w(l), e_a(l), e_b(l)]; its roots are isolated by bisection on the
/// monotone pieces between critical points and each candidate is tested with
/// the static segment distance. When the cubic finds nothing, a Lipschitz
/// subdivision of the distance function catches near misses within the
/// tolerance (and handles coplanar motion and other dimensions). Ambiguity
/// resolves to "contact".
std::optional<double> moving_segments_contact(const MovingSegment& a, const MovingSegment& b,
                                              double tolerance);

/// For two edges sharing a vertex: earliest l at which the edges fold onto
/// each other (overlap beyond the shared vertex). `to_a` and `to_b` run from
/// the shared vertex to the other endpoints.
std::optional<double> adjacent_fold_contact(const MovingSegment& to_a, const MovingSegment& to_b);

/// Exact minimum over l in [0, 1] and all edges of the edge length of F(., l).
/// Throws PartitionMismatch.
double min_edge_length_over_homotopy(const Polyline& from, const Polyline& to);

/// Largest turning angle of F(., l) over l in {0, 1/samples, ..., 1}.
/// Throws DegenerateEdge if a sampled edge vanishes.
double max_turning_angle_over_homotopy(const Polyline& from, const Polyline& to, int samples = 16);

/// Earliest contact between two edges of F(., l), ordered by (l, pair).
std::optional<Collision> swept_collision_check(const Polyline& from, const Polyline& to,
                                               double tolerance);

/// Static self-intersection test: non-adjacent edges closer than `tolerance`
/// or adjacent edges folded back onto each other.
std::optional<std::pair<int, int>> find_self_intersection(const Polyline& curve, double tolerance);

/// Runs the edge-length, turning-angle, and swept-collision checks.
HomotopyCertificate certify_isotopy(const Polyline& from, const Polyline& to,
                                    const IsotopyPolicy& policy = {});

}  // namespace menger
