#include "menger/geometry.hpp"

#include "detail.hpp"
#include "menger/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace menger {

Partition Partition::uniform(int vertex_count) {
  if (vertex_count < 3) {
    throw Error(ErrorKind::InvalidParams, "a closed polyline needs N >= 3, got " +
                                              std::to_string(vertex_count));
  }
  std::vector<double> params(vertex_count);
  for (int v = 0; v < vertex_count; ++v) params[v] = static_cast<double>(v) / vertex_count;
  return Partition(std::move(params), true);
}

Partition::Partition(std::vector<double> vertex_params) : params_(std::move(vertex_params)) {
  if (params_.size() < 3) {
    throw Error(ErrorKind::InvalidParams, "a closed polyline needs N >= 3");
  }
  if (params_.front() < 0.0 || params_.back() >= 1.0) {
    throw Error(ErrorKind::InvalidParams, "vertex parameters must lie in [0, 1)");
  }
  for (std::size_t v = 1; v < params_.size(); ++v) {
    if (!(params_[v] > params_[v - 1])) {
      throw Error(ErrorKind::InvalidParams, "vertex parameters must be strictly increasing");
    }
  }
  if (!(params_.front() + 1.0 > params_.back())) {
    throw Error(ErrorKind::InvalidParams, "wrapping edge has zero parameter length");
  }
  const int n = size();
  uniform_ = true;
  for (int v = 0; v < n; ++v) {
    if (params_[v] != static_cast<double>(v) / n) {
      uniform_ = false;
      break;
    }
  }
  init_lengths();
}

Partition::Partition(std::vector<double> params, bool uniform)
    : params_(std::move(params)), uniform_(uniform) {
  init_lengths();
}

void Partition::init_lengths() {
  const int n = size();
  lengths_.resize(n);
  if (uniform_) {
    std::fill(lengths_.begin(), lengths_.end(), 1.0 / n);
    return;
  }
  for (int i = 0; i + 1 < n; ++i) lengths_[i] = params_[i + 1] - params_[i];
  lengths_[n - 1] = params_[0] + 1.0 - params_[n - 1];
}

double Partition::edge_midpoint(int i) const {
  double m = params_[i] + 0.5 * lengths_[i];
  if (m >= 1.0) m -= 1.0;
  return m;
}

std::uint64_t Partition::fingerprint() const {
  return detail::fnv1a(params_.data(), params_.size() * sizeof(double));
}

double periodic_distance(double u, double v) {
  double d = std::fabs(u - v);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

Polyline::Polyline(VertexField points, Partition partition)
    : points_(std::move(points)), partition_(std::move(partition)) {
  if (points_.cols() != partition_.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "polyline has " + std::to_string(points_.cols()) + " points but partition has " +
                    std::to_string(partition_.size()) + " vertices");
  }
  if (points_.rows() < 2) {
    throw Error(ErrorKind::InvalidParams, "ambient dimension must be at least 2");
  }
}

Polyline::Polyline(VertexField points)
    : Polyline(points, Partition::uniform(static_cast<int>(points.cols()))) {}

Eigen::VectorXd Polyline::edge_vector(int i) const {
  return points_.col(partition_.head(i)) - points_.col(partition_.tail(i));
}

Polyline Polyline::with_points(VertexField points) const {
  return Polyline(std::move(points), partition_);
}

std::uint64_t Polyline::fingerprint() const {
  const auto h = partition_.fingerprint();
  return detail::fnv1a(points_.data(), static_cast<std::size_t>(points_.size()) * sizeof(double),
                       h);
}

double edge_length(const Polyline& curve, int edge) { return curve.edge_vector(edge).norm(); }

Eigen::VectorXd unit_edge_vector(const Polyline& curve, int edge) {
  Eigen::VectorXd e = curve.edge_vector(edge);
  const double len = e.norm();
  if (!(len > 0.0)) {
    throw Error(ErrorKind::DegenerateEdge, "edge " + std::to_string(edge) + " has zero length");
  }
  return e / len;
}

EdgeMidpoint midpoints(const Polyline& curve, int edge) {
  const auto& T = curve.partition();
  return {0.5 * (curve.point(T.tail(edge)) + curve.point(T.head(edge))), T.edge_midpoint(edge)};
}

std::vector<double> edge_lengths(const Polyline& curve) {
  std::vector<double> out(curve.size());
  for (int i = 0; i < curve.size(); ++i) out[i] = edge_length(curve, i);
  return out;
}

double total_length(const Polyline& curve) {
  double sum = 0.0;
  for (int i = 0; i < curve.size(); ++i) sum += edge_length(curve, i);
  return sum;
}

double min_edge_length(const Polyline& curve) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < curve.size(); ++i) m = std::min(m, edge_length(curve, i));
  return m;
}

bool is_regular(const Polyline& curve) { return min_edge_length(curve) > 0.0; }

double diameter(const Polyline& curve) {
  double best = 0.0;
  const auto& X = curve.points();
  for (int u = 0; u < curve.size(); ++u) {
    for (int v = u + 1; v < curve.size(); ++v) {
      best = std::max(best, (X.col(u) - X.col(v)).squaredNorm());
    }
  }
  return std::sqrt(best);
}

double bilipschitz_constant(const Polyline& curve) {
  const auto& T = curve.partition();
  double best = std::numeric_limits<double>::infinity();
  for (int u = 0; u < curve.size(); ++u) {
    for (int v = u + 1; v < curve.size(); ++v) {
      const double chord = (curve.point(u) - curve.point(v)).norm();
      best = std::min(best, chord / periodic_distance(T.vertex_param(u), T.vertex_param(v)));
    }
  }
  return best;
}

namespace {

std::vector<Eigen::VectorXd> unit_tangents(const Polyline& curve) {
  std::vector<Eigen::VectorXd> tau(curve.size());
  for (int i = 0; i < curve.size(); ++i) tau[i] = unit_edge_vector(curve, i);
  return tau;
}

double angle_between_units(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

}  // namespace

std::vector<double> turning_angles(const Polyline& curve) {
  const auto tau = unit_tangents(curve);
  const int n = curve.size();
  std::vector<double> out(n);
  for (int v = 0; v < n; ++v) out[v] = angle_between_units(tau[(v + n - 1) % n], tau[v]);
  return out;
}

Eigen::VectorXd barycenter(const Polyline& curve) {
  const auto& T = curve.partition();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(curve.dim());
  for (int i = 0; i < curve.size(); ++i) {
    sum += 0.5 * (curve.point(T.tail(i)) + curve.point(T.head(i))) * T.edge_length(i);
  }
  return sum;
}

double theta_min_eigenvalue(const Polyline& curve) {
  const int n = curve.dim();
  const auto& T = curve.partition();
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < curve.size(); ++i) {
    const Eigen::VectorXd t = unit_edge_vector(curve, i);
    theta += (Eigen::MatrixXd::Identity(n, n) - t * t.transpose()) * T.edge_length(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(theta, Eigen::EigenvaluesOnly);
  return std::max(0.0, eig.eigenvalues()(0));
}

double tangent_holder_constant(const Polyline& curve, double alpha) {
  const auto tau = unit_tangents(curve);
  const auto& T = curve.partition();
  double best = 0.0;
  for (int i = 0; i < curve.size(); ++i) {
    for (int j = i + 1; j < curve.size(); ++j) {
      const double dist = periodic_distance(T.edge_midpoint(i), T.edge_midpoint(j));
      best = std::max(best, angle_between_units(tau[i], tau[j]) / std::pow(dist, alpha));
    }
  }
  return best;
}

double theta_eigenvalue_lower_bound(double holder_constant, double alpha) {
  using std::numbers::pi;
  const double lead = pi * pi / ((2.0 + 1.0 / alpha) * (2.0 + 1.0 / alpha));
  return lead * std::pow(pi / ((2.0 + 4.0 * alpha) * holder_constant), 1.0 / alpha);
}

GeometryDiagnostics diagnose_geometry(const Polyline& curve) {
  GeometryDiagnostics d;
  d.bilipschitz = bilipschitz_constant(curve);
  const auto lengths = edge_lengths(curve);
  d.min_edge_length = *std::min_element(lengths.begin(), lengths.end());
  d.max_edge_length = *std::max_element(lengths.begin(), lengths.end());
  for (double l : lengths) d.total_length += l;
  const auto angles = turning_angles(curve);
  d.max_turning_angle = *std::max_element(angles.begin(), angles.end());
  d.barycenter = barycenter(curve);
  d.theta_min_eigenvalue = theta_min_eigenvalue(curve);
  return d;
}

}  // namespace menger
