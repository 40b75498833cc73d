#include "menger/energy.hpp"

#include "detail.hpp"
#include "menger/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace menger {

void EnergyParams::validate() const {
  if (!std::isfinite(p) || p <= 0.0) {
    throw Error(ErrorKind::InvalidParams, "p must be a positive number");
  }
  if (!allow_any_p && !p_in_admissible_range(p)) {
    throw Error(ErrorKind::InvalidParams,
                "p = " + std::to_string(p) + " lies outside (7/3, 8/3); set allow_any_p to override");
  }
  if (!(degenerate_threshold > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "degenerate_threshold must be positive");
  }
  if (threads < 0) throw Error(ErrorKind::InvalidParams, "threads must be >= 0");
}

bool p_in_admissible_range(double p) { return p > 7.0 / 3.0 && p < 8.0 / 3.0; }

namespace {

// Kernel K = f / (|x-y|^2 |y-z|^2 |z-x|^2)^(p/2) with f = |(y-x)^(z-x)|^2.
// For q = p the wedge is twice the triangle area, so |w|^p / (abc)^p equals
// (1 / 2R)^p with R the circumradius. That pins the normalization: the
// classical Menger integrand (1/R)^p is 2^p times this kernel.
// For n = 3 the wedge is the cross product; otherwise f comes from the
// Lagrange identity |a|^2 |b|^2 - (a.b)^2.
template <int Dim>
struct TripleKernel {
  using Vec = Eigen::Matrix<double, Dim, 1>;

  static double wedge_sq(const Vec& a, const Vec& b) {
    if constexpr (Dim == 3) {
      return a.cross(b).squaredNorm();
    } else {
      const double ab = a.dot(b);
      return std::max(0.0, a.squaredNorm() * b.squaredNorm() - ab * ab);
    }
  }

  // Gradients of wedge_sq with respect to a and b.
  static void wedge_sq_grad(const Vec& a, const Vec& b, Vec& ga, Vec& gb) {
    if constexpr (Dim == 3) {
      const Vec c = a.cross(b);
      ga = 2.0 * b.cross(c);
      gb = 2.0 * c.cross(a);
    } else {
      const double ab = a.dot(b);
      ga = 2.0 * (b.squaredNorm() * a - ab * b);
      gb = 2.0 * (a.squaredNorm() * b - ab * a);
    }
  }

  static void check_distance(double dist_sq, double collision_distance) {
    if (!(dist_sq > collision_distance * collision_distance) || dist_sq == 0.0) {
      throw Error(ErrorKind::MidpointCollision,
                  "pairwise midpoint distance " + std::to_string(std::sqrt(dist_sq)) +
                      " below collision guard " + std::to_string(collision_distance));
    }
  }

  static double value(const Vec& x, const Vec& y, const Vec& z, double p, double collision_distance) {
    const double dxy = (x - y).squaredNorm();
    const double dyz = (y - z).squaredNorm();
    const double dzx = (z - x).squaredNorm();
    check_distance(dxy, collision_distance);
    check_distance(dyz, collision_distance);
    check_distance(dzx, collision_distance);
    // Same rounding as value_and_grad, so energies from both paths agree bitwise.
    const double inv_den = 1.0 / std::pow(dxy * dyz * dzx, 0.5 * p);
    return wedge_sq(y - x, z - x) * inv_den;
  }

  // Returns K and writes dK/dx, dK/dy, dK/dz.
  static double value_and_grad(const Vec& x, const Vec& y, const Vec& z, double p,
                               double collision_distance, Vec& gx, Vec& gy, Vec& gz) {
    const Vec xy = x - y, yz = y - z, zx = z - x;
    const double dxy = xy.squaredNorm();
    const double dyz = yz.squaredNorm();
    const double dzx = zx.squaredNorm();
    check_distance(dxy, collision_distance);
    check_distance(dyz, collision_distance);
    check_distance(dzx, collision_distance);
    const Vec a = y - x, b = z - x;
    const double inv_den = 1.0 / std::pow(dxy * dyz * dzx, 0.5 * p);
    const double f = wedge_sq(a, b);
    const double k = f * inv_den;
    Vec ga, gb;
    wedge_sq_grad(a, b, ga, gb);
    // d log(den) = p (xy/dxy d(x-y) + yz/dyz d(y-z) + zx/dzx d(z-x))
    const Vec txy = xy / dxy, tyz = yz / dyz, tzx = zx / dzx;
    gx = -(ga + gb) * inv_den - k * p * (txy - tzx);
    gy = ga * inv_den - k * p * (tyz - txy);
    gz = gb * inv_den - k * p * (tzx - tyz);
    return k;
  }
};

// Per-edge data shared by the triple loops.
struct EdgeTable {
  VertexField mid;      // n x N midpoints
  VertexField tangent;  // n x N unit tangents
  std::vector<double> length;
  std::vector<int> tail, head;
};

EdgeTable edge_table(const Polyline& curve) {
  const int n = curve.size();
  const auto& T = curve.partition();
  EdgeTable t;
  t.mid.resize(curve.dim(), n);
  t.tangent.resize(curve.dim(), n);
  t.length.resize(n);
  t.tail.resize(n);
  t.head.resize(n);
  for (int i = 0; i < n; ++i) {
    t.tail[i] = T.tail(i);
    t.head[i] = T.head(i);
    const Eigen::VectorXd e = curve.point(t.head[i]) - curve.point(t.tail[i]);
    t.length[i] = e.norm();
    t.tangent.col(i) = t.length[i] > 0.0 ? Eigen::VectorXd(e / t.length[i])
                                         : Eigen::VectorXd::Zero(curve.dim());
    t.mid.col(i) = 0.5 * (curve.point(t.tail[i]) + curve.point(t.head[i]));
  }
  return t;
}

void require_regular(const EdgeTable& t) {
  for (std::size_t i = 0; i < t.length.size(); ++i) {
    if (!(t.length[i] > 0.0)) {
      throw Error(ErrorKind::DegenerateEdge, "edge " + std::to_string(i) + " has zero length");
    }
  }
}

template <int Dim>
double energy_impl(const Polyline& curve, const EnergyParams& params) {
  using K = TripleKernel<Dim>;
  using Vec = typename K::Vec;
  const EdgeTable t = edge_table(curve);
  require_regular(t);
  const int n = curve.size();
  const double guard = params.degenerate_threshold * diameter(curve);
  std::vector<double> partial(n, 0.0);
  detail::parallel_for(n, params.threads, [&](int i) {
    const Vec mi = t.mid.col(i);
    double acc = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const Vec mj = t.mid.col(j);
      const double lij = t.length[i] * t.length[j];
      double row = 0.0;
      for (int k = j + 1; k < n; ++k) {
        const Vec mk = t.mid.col(k);
        row += lij * t.length[k] * K::value(mi, mj, mk, params.p, guard);
      }
      acc += row;
    }
    partial[i] = acc;
  });
  double sum = 0.0;
  for (double s : partial) sum += s;
  return 6.0 * sum;
}

template <int Dim>
EnergyReport differential_impl(const Polyline& curve, const EnergyParams& params) {
  using K = TripleKernel<Dim>;
  using Vec = typename K::Vec;
  const EdgeTable t = edge_table(curve);
  require_regular(t);
  const int n = curve.size();
  const int dim = curve.dim();
  const double guard = params.degenerate_threshold * diameter(curve);

  // One buffer per outer edge, merged in index order so the result does not
  // depend on the worker count.
  std::vector<double> partial(n, 0.0);
  std::vector<VertexField> grads(n);
  detail::parallel_for(n, params.threads, [&](int i) {
    VertexField g = VertexField::Zero(dim, n);
    const Vec mi = t.mid.col(i), ti = t.tangent.col(i);
    Vec gmi = Vec::Zero(dim);  // accumulated dW/dm_i
    Vec gli = Vec::Zero(dim);  // accumulated (dW/dl_i) tau_i
    double acc = 0.0;
    Vec gx(dim), gy(dim), gz(dim);
    for (int j = i + 1; j < n; ++j) {
      const Vec mj = t.mid.col(j), tj = t.tangent.col(j);
      double row = 0.0;
      for (int k = j + 1; k < n; ++k) {
        const Vec mk = t.mid.col(k), tk = t.tangent.col(k);
        const double li = t.length[i], lj = t.length[j], lk = t.length[k];
        const double kval = K::value_and_grad(mi, mj, mk, params.p, guard, gx, gy, gz);
        const double l3 = li * lj * lk;
        row += l3 * kval;
        gmi += l3 * gx;
        gli += (kval * lj * lk) * ti;
        const Vec dj = 0.5 * l3 * gy, ej = (kval * li * lk) * tj;
        const Vec dk = 0.5 * l3 * gz, ek = (kval * li * lj) * tk;
        g.col(t.tail[j]) += dj - ej;
        g.col(t.head[j]) += dj + ej;
        g.col(t.tail[k]) += dk - ek;
        g.col(t.head[k]) += dk + ek;
      }
      acc += row;
    }
    g.col(t.tail[i]) += 0.5 * gmi - gli;
    g.col(t.head[i]) += 0.5 * gmi + gli;
    partial[i] = acc;
    grads[i] = std::move(g);
  });

  EnergyReport report;
  report.differential = VertexField::Zero(dim, n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += partial[i];
    report.differential += grads[i];
  }
  report.value = 6.0 * sum;
  report.differential *= 6.0;
  const std::int64_t nn = n;
  report.triple_count = nn * (nn - 1) * (nn - 2) / 6;
  return report;
}

void check_inputs(const Polyline& curve, const EnergyParams& params) {
  params.validate();
  if (curve.size() < 3) throw Error(ErrorKind::InvalidParams, "energy needs N >= 3");
}

}  // namespace

double kernel_rpq_inverse(const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& y,
                          const Eigen::Ref<const Eigen::VectorXd>& z, const EnergyParams& params,
                          double collision_distance) {
  if (x.size() != y.size() || y.size() != z.size()) {
    throw Error(ErrorKind::DimensionMismatch, "kernel arguments differ in dimension");
  }
  if (x.size() == 3) {
    return TripleKernel<3>::value(x, y, z, params.p, collision_distance);
  }
  return TripleKernel<Eigen::Dynamic>::value(x, y, z, params.p, collision_distance);
}

double local_contribution(const Polyline& curve, int edge1, int edge2, int edge3,
                          const EnergyParams& params) {
  if (edge1 == edge2 || edge2 == edge3 || edge1 == edge3) {
    throw Error(ErrorKind::NonDistinctEdges, "local contribution needs three distinct edges");
  }
  std::array<int, 3> idx{edge1, edge2, edge3};
  for (int e : idx) {
    if (e < 0 || e >= curve.size()) throw Error(ErrorKind::InvalidParams, "edge index out of range");
  }
  std::sort(idx.begin(), idx.end());
  const double guard = params.degenerate_threshold * diameter(curve);
  const auto m0 = midpoints(curve, idx[0]).spatial;
  const auto m1 = midpoints(curve, idx[1]).spatial;
  const auto m2 = midpoints(curve, idx[2]).spatial;
  const double lengths =
      edge_length(curve, idx[0]) * edge_length(curve, idx[1]) * edge_length(curve, idx[2]);
  return lengths * kernel_rpq_inverse(m0, m1, m2, params, guard);
}

double total_energy(const Polyline& curve, const EnergyParams& params) {
  check_inputs(curve, params);
  if (curve.dim() == 3) return energy_impl<3>(curve, params);
  return energy_impl<Eigen::Dynamic>(curve, params);
}

EnergyReport energy_differential(const Polyline& curve, const EnergyParams& params) {
  check_inputs(curve, params);
  if (curve.dim() == 3) return differential_impl<3>(curve, params);
  return differential_impl<Eigen::Dynamic>(curve, params);
}

VertexField finite_difference_differential(const Polyline& curve, const EnergyParams& params,
                                           double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidParams, "finite-difference step must be positive");
  VertexField out(curve.dim(), curve.size());
  VertexField X = curve.points();
  for (int v = 0; v < curve.size(); ++v) {
    for (int c = 0; c < curve.dim(); ++c) {
      const double saved = X(c, v);
      X(c, v) = saved + h;
      const double plus = total_energy(curve.with_points(X), params);
      X(c, v) = saved - h;
      const double minus = total_energy(curve.with_points(X), params);
      X(c, v) = saved;
      out(c, v) = (plus - minus) / (2.0 * h);
    }
  }
  return out;
}

}  // namespace menger
