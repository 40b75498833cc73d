#pragma once

#include "menger/geometry.hpp"
#include "menger/isotopy.hpp"

#include <cmath>
#include <random>

namespace menger::testing {

inline Polyline unit_square() {
  VertexField pts(3, 4);
  pts << 0, 1, 1, 0,
         0, 0, 1, 1,
         0, 0, 0, 0;
  return Polyline(pts);
}

inline Polyline equilateral_triangle(double side = 1.0) {
  VertexField pts(3, 3);
  pts << 0.0, side, 0.5 * side,
         0.0, 0.0, 0.5 * std::sqrt(3.0) * side,
         0.0, 0.0, 0.0;
  return Polyline(pts);
}

// Noisy, non-planar closed curve around the unit circle with edges bounded
// away from zero and no near self-contact.
inline Polyline random_curve(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (;;) {
    VertexField pts(3, n);
    for (int v = 0; v < n; ++v) {
      const double t = 2.0 * M_PI * v / n;
      pts.col(v) << std::cos(t) + 0.35 * unit(rng), std::sin(t) + 0.35 * unit(rng), 0.5 * unit(rng);
    }
    Polyline curve(pts);
    if (min_edge_length(curve) > 0.1 && !find_self_intersection(curve, 1e-3)) return curve;
  }
}

inline VertexField random_field(int dim, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  VertexField f(dim, n);
  for (int k = 0; k < f.size(); ++k) f(k) = normal(rng);
  return f;
}

inline Eigen::Matrix3d rotation(double a, double b, double c) {
  return (Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(b, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(c, Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

}  // namespace menger::testing
