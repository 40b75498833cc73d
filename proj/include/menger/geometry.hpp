#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace menger {

// Column v holds the value at vertex v. Used both for curve points and for
// vertex fields (variations, gradients, differentials).
using VertexField = Eigen::MatrixXd;

/// Partition of the periodic parameter domain R/Z into N edges.
///
/// Edge i runs from vertex i to vertex (i + 1) mod N; the last edge wraps
/// around 1 and has length u_0 + 1 - u_{N-1}.
class Partition {
 public:
  static Partition uniform(int vertex_count);

  /// Throws InvalidParams unless 0 <= u_0 < ... < u_{N-1} < 1 and N >= 3.
  explicit Partition(std::vector<double> vertex_params);

  int size() const { return static_cast<int>(params_.size()); }
  bool is_uniform() const { return uniform_; }

  double vertex_param(int v) const { return params_[v]; }
  const std::vector<double>& vertex_params() const { return params_; }

  /// Parameter length |I| of edge i.
  double edge_length(int i) const { return lengths_[i]; }

  /// Parameter midpoint of edge i, reduced to [0, 1).
  double edge_midpoint(int i) const;

  int tail(int i) const { return i; }
  int head(int i) const { return i + 1 == size() ? 0 : i + 1; }

  std::uint64_t fingerprint() const;

  bool operator==(const Partition& other) const { return params_ == other.params_; }

 private:
  Partition(std::vector<double> params, bool uniform);
  void init_lengths();

  std::vector<double> params_;
  std::vector<double> lengths_;
  bool uniform_ = false;
};

/// Distance on R/Z, always in [0, 1/2].
double periodic_distance(double u, double v);

/// Closed polygonal line: a map from partition vertices into R^n.
class Polyline {
 public:
  /// points is n x N. Throws DimensionMismatch if N differs from the
  /// partition size, InvalidParams if n < 2.
  Polyline(VertexField points, Partition partition);

  /// Uniform partition.
  explicit Polyline(VertexField points);

  int size() const { return static_cast<int>(points_.cols()); }
  int dim() const { return static_cast<int>(points_.rows()); }

  const VertexField& points() const { return points_; }
  auto point(int v) const { return points_.col(v); }
  const Partition& partition() const { return partition_; }

  Eigen::VectorXd edge_vector(int i) const;

  /// Same partition, new vertex positions.
  Polyline with_points(VertexField points) const;

  std::uint64_t fingerprint() const;

 private:
  VertexField points_;
  Partition partition_;
};

struct EdgeMidpoint {
  Eigen::VectorXd spatial;
  double param = 0.0;
};

double edge_length(const Polyline& curve, int edge);

/// Throws DegenerateEdge on a zero-length edge.
Eigen::VectorXd unit_edge_vector(const Polyline& curve, int edge);

EdgeMidpoint midpoints(const Polyline& curve, int edge);

std::vector<double> edge_lengths(const Polyline& curve);
double total_length(const Polyline& curve);
double min_edge_length(const Polyline& curve);

/// True when every edge has positive length.
bool is_regular(const Polyline& curve);

/// Largest distance between two vertices.
double diameter(const Polyline& curve);

/// Vertex-pair surrogate for the bilipschitz constant: the minimum over
/// distinct vertex pairs of |P(u) - P(v)| / |u - v|_{R/Z}. It bounds the
/// continuum infimum from above.
double bilipschitz_constant(const Polyline& curve);

/// Angle at vertex i between the tangents of edges i-1 and i, in [0, pi].
std::vector<double> turning_angles(const Polyline& curve);

/// Trapezoidal barycenter 1/2 sum_I (P(tail I) + P(head I)) |I|.
Eigen::VectorXd barycenter(const Polyline& curve);

/// Smallest eigenvalue of sum_I (Id - tau_I tau_I^T) |I|.
double theta_min_eigenvalue(const Polyline& curve);

/// Discrete Hoelder constant (exponent alpha) of the unit tangent in the
/// angular metric: max over edge pairs of angle(tau_I, tau_J) / |m(I) - m(J)|^alpha.
double tangent_holder_constant(const Polyline& curve, double alpha = 1.0);

/// pi^2 / (2 + 1/alpha)^2 * (pi / ((2 + 4 alpha) C))^(1/alpha).
double theta_eigenvalue_lower_bound(double holder_constant, double alpha = 1.0);

struct GeometryDiagnostics {
  double bilipschitz = 0.0;
  double min_edge_length = 0.0;
  double max_edge_length = 0.0;
  double max_turning_angle = 0.0;
  double total_length = 0.0;
  Eigen::VectorXd barycenter;
  double theta_min_eigenvalue = 0.0;
};

GeometryDiagnostics diagnose_geometry(const Polyline& curve);

// Initial data.

/// (a, b) torus knot on a uniform partition with N vertices:
/// ((R + r cos 2 pi b t) cos 2 pi a t, (R + r cos 2 pi b t) sin 2 pi a t, r sin 2 pi b t).
/// b = 0 gives the circle of radius R + r.
Polyline generate_torus_knot(int a, int b, int vertex_count, double major_radius = 2.0,
                             double minor_radius = 1.0);

/// Regular N-gon of circumradius `radius` in the xy-plane of R^dim.
Polyline regular_polygon(int vertex_count, double radius = 1.0, int dim = 3);

/// Polyhedral square knot (connected sum of a trefoil and its mirror image),
/// resampled to N vertices equidistant in arc length.
Polyline generate_square_knot(int vertex_count);

/// Adds i.i.d. uniform noise in [-amplitude, amplitude] to every coordinate.
///
/// Draws come from std::mt19937_64 (bit-exact by the standard) mapped to
/// [0, 1) through the top 53 bits, so outputs agree across platforms.
Polyline add_vertex_noise(const Polyline& curve, double amplitude, std::uint64_t seed);

}  // namespace menger
