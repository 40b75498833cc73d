#include "menger/error.hpp"
#include "menger/geometry.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace menger {

using std::numbers::pi;

Polyline generate_torus_knot(int a, int b, int vertex_count, double major_radius,
                             double minor_radius) {
  if (vertex_count < 3) {
    throw Error(ErrorKind::InvalidParams, "torus knot needs N >= 3");
  }
  if (std::gcd(a, b) != 1) {
    throw Error(ErrorKind::InvalidParams,
                "torus knot needs gcd(a, b) = 1, got (" + std::to_string(a) + ", " +
                    std::to_string(b) + ")");
  }
  if (!(minor_radius > 0.0) || !(major_radius > minor_radius)) {
    throw Error(ErrorKind::InvalidParams, "torus knot needs R > r > 0");
  }
  VertexField X(3, vertex_count);
  for (int i = 0; i < vertex_count; ++i) {
    const double t = static_cast<double>(i) / vertex_count;
    const double ring = major_radius + minor_radius * std::cos(2.0 * pi * b * t);
    X(0, i) = ring * std::cos(2.0 * pi * a * t);
    X(1, i) = ring * std::sin(2.0 * pi * a * t);
    X(2, i) = minor_radius * std::sin(2.0 * pi * b * t);
  }
  return Polyline(std::move(X));
}

Polyline regular_polygon(int vertex_count, double radius, int dim) {
  if (vertex_count < 3 || dim < 2) {
    throw Error(ErrorKind::InvalidParams, "regular polygon needs N >= 3 and n >= 2");
  }
  VertexField X = VertexField::Zero(dim, vertex_count);
  for (int i = 0; i < vertex_count; ++i) {
    const double t = 2.0 * pi * i / vertex_count;
    X(0, i) = radius * std::cos(t);
    X(1, i) = radius * std::sin(t);
  }
  return Polyline(std::move(X));
}

namespace {

Eigen::Vector3d trefoil_point(double t, double z_sign) {
  return {std::sin(t) + 2.0 * std::sin(2.0 * t), std::cos(t) - 2.0 * std::cos(2.0 * t),
          -z_sign * std::sin(3.0 * t)};
}

// Resample a closed polygon to `count` points equidistant in arc length.
VertexField resample_closed(const std::vector<Eigen::Vector3d>& pts, int count) {
  const int m = static_cast<int>(pts.size());
  std::vector<double> cumulative(m + 1, 0.0);
  for (int i = 0; i < m; ++i) {
    cumulative[i + 1] = cumulative[i] + (pts[(i + 1) % m] - pts[i]).norm();
  }
  const double length = cumulative[m];
  VertexField X(3, count);
  int seg = 0;
  for (int k = 0; k < count; ++k) {
    const double target = length * k / count;
    while (cumulative[seg + 1] < target) ++seg;
    const double span = cumulative[seg + 1] - cumulative[seg];
    const double w = span > 0.0 ? (target - cumulative[seg]) / span : 0.0;
    X.col(k) = (1.0 - w) * pts[seg] + w * pts[(seg + 1) % m];
  }
  return X;
}

}  // namespace

Polyline generate_square_knot(int vertex_count) {
  if (vertex_count < 3) {
    throw Error(ErrorKind::InvalidParams, "square knot needs N >= 3");
  }
  // Coarse stick trefoils: a right-handed one and its mirror image, cut open
  // at their outermost vertices along x and joined by two bridges.
  constexpr int sticks = 24;
  constexpr int cut = 1;
  std::vector<Eigen::Vector3d> left(sticks), right(sticks);
  for (int i = 0; i < sticks; ++i) {
    const double t = 2.0 * pi * i / sticks;
    left[i] = trefoil_point(t, 1.0);
    right[i] = trefoil_point(t, -1.0);
  }
  int imax = 0, imin = 0;
  for (int i = 0; i < sticks; ++i) {
    if (left[i].x() > left[imax].x()) imax = i;
    if (right[i].x() < right[imin].x()) imin = i;
  }
  const double shift = left[imax].x() - right[imin].x() + 1.5;
  for (auto& p : right) p.x() += shift;

  std::vector<Eigen::Vector3d> loop;
  for (int k = cut; k <= sticks - cut; ++k) loop.push_back(left[(imax + k) % sticks]);
  const Eigen::Vector3d& left_end = loop.back();
  const Eigen::Vector3d& fwd = right[(imin + cut) % sticks];
  const Eigen::Vector3d& bwd = right[(imin + sticks - cut) % sticks];
  const bool forward = (fwd - left_end).norm() <= (bwd - left_end).norm();
  for (int k = cut; k <= sticks - cut; ++k) {
    const int idx = forward ? (imin + k) % sticks : (imin + sticks - k) % sticks;
    loop.push_back(right[idx]);
  }
  return Polyline(resample_closed(loop, vertex_count));
}

Polyline add_vertex_noise(const Polyline& curve, double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0)) {
    throw Error(ErrorKind::InvalidParams, "noise amplitude must be non-negative");
  }
  if (amplitude == 0.0) return curve;
  std::mt19937_64 rng(seed);
  VertexField X = curve.points();
  for (int v = 0; v < X.cols(); ++v) {
    for (int c = 0; c < X.rows(); ++c) {
      const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      X(c, v) += amplitude * (2.0 * unit - 1.0);
    }
  }
  return curve.with_points(std::move(X));
}

}  // namespace menger
