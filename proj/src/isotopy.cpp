#include "menger/isotopy.hpp"

#include "menger/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace menger {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Real roots of a x^2 + b x + c in ascending order (numerically stable form).
std::vector<double> quadratic_roots(double a, double b, double c) {
  std::vector<double> roots;
  const double scale = std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
  if (scale == 0.0) return roots;
  if (std::fabs(a) <= 1e-14 * scale) {
    if (b != 0.0) roots.push_back(-c / b);
    return roots;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return roots;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q != 0.0) {
    roots.push_back(q / a);
    roots.push_back(c / q);
  } else {
    roots.push_back(0.0);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

struct Cubic {
  std::array<double, 4> c{};  // c[0] + c[1] x + c[2] x^2 + c[3] x^3

  double operator()(double x) const { return ((c[3] * x + c[2]) * x + c[1]) * x + c[0]; }
  double derivative(double x) const { return (3.0 * c[3] * x + 2.0 * c[2]) * x + c[1]; }
  double second_derivative(double x) const { return 6.0 * c[3] * x + 2.0 * c[2]; }
  double magnitude() const {
    return std::fabs(c[0]) + std::fabs(c[1]) + std::fabs(c[2]) + std::fabs(c[3]);
  }
};

double bisect(const Cubic& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 4.0 * kEps; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Distance between the two moving segments at parameter lambda.
double distance_at(const MovingSegment& a, const MovingSegment& b, double lambda) {
  return segment_distance(a.start(lambda), a.end(lambda), b.start(lambda), b.end(lambda));
}

// Conservative search for the earliest contact on [lo, hi] using the
// Lipschitz bound |d(l) - d(m)| <= L |l - m| of the distance function.
class LipschitzSearch {
 public:
  LipschitzSearch(const MovingSegment& a, const MovingSegment& b, double tolerance)
      : a_(a), b_(b), tol_(tolerance), lip_(a.max_speed() + b.max_speed()) {}

  std::optional<double> run(double lo, double hi) { return search(lo, hi); }

 private:
  std::optional<double> search(double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double dm = distance_at(a_, b_, mid);
    if (--budget_ < 0) return mid;
    if (dm - 0.5 * lip_ * (hi - lo) > tol_) return std::nullopt;
    if (hi - lo < 1e-12) return mid;
    if (auto left = search(lo, mid)) return left;
    if (dm <= tol_) return mid;
    return search(mid, hi);
  }

  const MovingSegment& a_;
  const MovingSegment& b_;
  double tol_;
  double lip_;
  long budget_ = 200000;
};

Eigen::Vector3d v3(const Eigen::VectorXd& v) { return {v(0), v(1), v(2)}; }

std::optional<double> cubic_contact(const MovingSegment& a, const MovingSegment& b,
                                    double tolerance) {
  // Linear pieces x(l) = x0 + l x1 of the base offset and the two directions.
  const Eigen::Vector3d w0 = v3(b.start0 - a.start0);
  const Eigen::Vector3d w1 = v3((b.start1 - a.start1) - (b.start0 - a.start0));
  const Eigen::Vector3d ea0 = v3(a.end0 - a.start0);
  const Eigen::Vector3d ea1 = v3((a.end1 - a.start1) - (a.end0 - a.start0));
  const Eigen::Vector3d eb0 = v3(b.end0 - b.start0);
  const Eigen::Vector3d eb1 = v3((b.end1 - b.start1) - (b.end0 - b.start0));

  const Eigen::Vector3d n0 = ea0.cross(eb0);
  const Eigen::Vector3d n1 = ea0.cross(eb1) + ea1.cross(eb0);
  const Eigen::Vector3d n2 = ea1.cross(eb1);
  Cubic f;
  f.c = {w0.dot(n0), w0.dot(n1) + w1.dot(n0), w0.dot(n2) + w1.dot(n1), w1.dot(n2)};

  const double scale = std::max(w0.norm(), (w0 + w1).norm()) *
                       std::max(ea0.norm(), (ea0 + ea1).norm()) *
                       std::max(eb0.norm(), (eb0 + eb1).norm());
  LipschitzSearch fallback(a, b, tolerance);
  if (!(f.magnitude() > 1e-8 * scale)) {
    // Coplanar for the whole motion (up to rounding).
    return fallback.run(0.0, 1.0);
  }

  // Breakpoints: interval ends and critical points split [0, 1] into
  // monotone pieces; sign changes bracket the simple roots.
  std::vector<double> breaks{0.0, 1.0};
  for (double r : quadratic_roots(3.0 * f.c[3], 2.0 * f.c[2], f.c[1])) {
    if (r > 0.0 && r < 1.0) breaks.push_back(r);
  }
  std::sort(breaks.begin(), breaks.end());

  const double err = 1e3 * kEps * f.magnitude();
  struct Candidate {
    double lambda;
    double window;
  };
  std::vector<Candidate> candidates;
  for (double x : breaks) {
    if (std::fabs(f(x)) <= err) {
      // Near-multiple root: its location is only known to sqrt precision.
      const double curv = std::fabs(f.second_derivative(x));
      const double window = curv > 0.0 ? std::sqrt(2.0 * err / curv) : 1.0;
      candidates.push_back({x, window});
    }
  }
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k], hi = breaks[k + 1];
    const double flo = f(lo), fhi = f(hi);
    if (flo == 0.0 || fhi == 0.0 || (flo < 0.0) == (fhi < 0.0)) continue;
    const double root = bisect(f, lo, hi);
    const double slope = std::fabs(f.derivative(root));
    const double window = slope > 0.0 ? std::max(1e-14, err / slope) : 1.0;
    candidates.push_back({root, window});
  }

  std::optional<double> earliest;
  for (const auto& cand : candidates) {
    if (earliest && cand.lambda - cand.window >= *earliest) continue;
    std::optional<double> hit;
    if (distance_at(a, b, cand.lambda) <= tolerance) {
      hit = cand.lambda;
    }
    if (cand.window >= 0.25) {
      if (auto h = fallback.run(0.0, 1.0)) hit = hit ? std::min(*hit, *h) : *h;
    } else {
      const double lo = std::max(0.0, cand.lambda - cand.window);
      const double hi = std::min(1.0, cand.lambda + cand.window);
      if (auto h = fallback.run(lo, hi)) hit = hit ? std::min(*hit, *h) : *h;
    }
    if (hit && (!earliest || *hit < *earliest)) earliest = hit;
  }
  return earliest;
}

Eigen::VectorXd perpendicular_part(const Eigen::VectorXd& v, const Eigen::VectorXd& unit) {
  return v - v.dot(unit) * unit;
}

}  // namespace

double MovingSegment::max_speed() const {
  return std::max((start1 - start0).norm(), (end1 - end0).norm());
}

double segment_distance(const Eigen::VectorXd& p0, const Eigen::VectorXd& p1,
                        const Eigen::VectorXd& q0, const Eigen::VectorXd& q1) {
  const Eigen::VectorXd d1 = p1 - p0;
  const Eigen::VectorXd d2 = q1 - q0;
  const Eigen::VectorXd r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0, t = 0.0;
  if (a == 0.0 && e == 0.0) {
    return r.norm();
  }
  if (a == 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e == 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p0 + s * d1) - (q0 + t * d2)).norm();
}

std::optional<double> moving_segments_contact(const MovingSegment& a, const MovingSegment& b,
                                              double tolerance) {
  // Midpoint prefilter: the distance cannot drop by more than L/2 on [0, 1].
  const double lip = a.max_speed() + b.max_speed();
  if (distance_at(a, b, 0.5) - 0.5 * lip > tolerance) return std::nullopt;
  if (a.start0.size() == 3) {
    if (auto hit = cubic_contact(a, b, tolerance)) return hit;
  }
  // No crossing; near misses closer than the tolerance still count.
  return LipschitzSearch(a, b, tolerance).run(0.0, 1.0);
}

std::optional<double> adjacent_fold_contact(const MovingSegment& to_a, const MovingSegment& to_b) {
  const Eigen::VectorXd a0 = to_a.end0 - to_a.start0;
  const Eigen::VectorXd da = (to_a.end1 - to_a.start1) - a0;
  const Eigen::VectorXd b0 = to_b.end0 - to_b.start0;
  const Eigen::VectorXd db = (to_b.end1 - to_b.start1) - b0;
  const int n = static_cast<int>(a0.size());

  auto folded = [&](double lambda) {
    const Eigen::VectorXd a = a0 + lambda * da;
    const Eigen::VectorXd b = b0 + lambda * db;
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) return true;
    if (a.dot(b) <= 0.0) return false;
    return perpendicular_part(a, b / nb).norm() <= 1e-9 * na;
  };

  // Parallelism means every 2x2 minor a_r b_c - a_c b_r vanishes; each minor
  // is quadratic in lambda. Use the best-conditioned one to place candidates.
  std::array<double, 3> best{0.0, 0.0, 0.0};
  double best_norm = -1.0;
  for (int r = 0; r < n; ++r) {
    for (int c = r + 1; c < n; ++c) {
      const std::array<double, 3> q{
          a0(r) * b0(c) - a0(c) * b0(r),
          a0(r) * db(c) + da(r) * b0(c) - a0(c) * db(r) - da(c) * b0(r),
          da(r) * db(c) - da(c) * db(r)};
      const double norm = std::fabs(q[0]) + std::fabs(q[1]) + std::fabs(q[2]);
      if (norm > best_norm) {
        best_norm = norm;
        best = q;
      }
    }
  }
  std::vector<double> candidates{0.0, 1.0};
  const double scale = (a0.norm() + da.norm()) * (b0.norm() + db.norm());
  if (best_norm > 1e-12 * scale) {
    for (double r : quadratic_roots(best[2], best[1], best[0])) {
      if (r >= 0.0 && r <= 1.0) candidates.push_back(r);
    }
    if (best[2] != 0.0) {
      const double vertex = -best[1] / (2.0 * best[2]);
      if (vertex > 0.0 && vertex < 1.0) candidates.push_back(vertex);
    }
  } else {
    // Parallel throughout: only the sign of a.b matters.
    const double c2 = da.dot(db), c1 = a0.dot(db) + da.dot(b0);
    if (c2 != 0.0) {
      const double vertex = -c1 / (2.0 * c2);
      if (vertex > 0.0 && vertex < 1.0) candidates.push_back(vertex);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (double lambda : candidates) {
    if (folded(lambda)) return lambda;
  }
  return std::nullopt;
}

namespace {

void require_same_partition(const Polyline& from, const Polyline& to) {
  if (!(from.partition() == to.partition()) || from.dim() != to.dim()) {
    throw Error(ErrorKind::PartitionMismatch, "homotopy endpoints use different partitions");
  }
}

MovingSegment moving_edge(const Polyline& from, const Polyline& to, int v_start, int v_end) {
  return {from.point(v_start), from.point(v_end), to.point(v_start), to.point(v_end)};
}

Polyline interpolate(const Polyline& from, const Polyline& to, double lambda) {
  return from.with_points((1.0 - lambda) * from.points() + lambda * to.points());
}

// Shared vertex of edges i < j, or -1.
int shared_vertex(const Partition& T, int i, int j) {
  if (T.head(i) == T.tail(j)) return T.head(i);
  if (T.head(j) == T.tail(i)) return T.tail(i);
  return -1;
}

}  // namespace

double min_edge_length_over_homotopy(const Polyline& from, const Polyline& to) {
  require_same_partition(from, to);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < from.size(); ++i) {
    const Eigen::VectorXd a = from.edge_vector(i);
    const Eigen::VectorXd b = to.edge_vector(i) - a;
    const double bb = b.squaredNorm();
    const double lambda = bb > 0.0 ? std::clamp(-a.dot(b) / bb, 0.0, 1.0) : 0.0;
    best = std::min(best, (a + lambda * b).norm());
  }
  return best;
}

double max_turning_angle_over_homotopy(const Polyline& from, const Polyline& to, int samples) {
  require_same_partition(from, to);
  if (samples < 1) throw Error(ErrorKind::InvalidParams, "need at least one angle sample");
  double best = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double lambda = static_cast<double>(k) / samples;
    const auto angles = turning_angles(interpolate(from, to, lambda));
    best = std::max(best, *std::max_element(angles.begin(), angles.end()));
  }
  return best;
}

std::optional<Collision> swept_collision_check(const Polyline& from, const Polyline& to,
                                               double tolerance) {
  require_same_partition(from, to);
  const auto& T = from.partition();
  const int n = from.size();
  std::optional<Collision> earliest;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::optional<double> hit;
      const int shared = shared_vertex(T, i, j);
      if (shared >= 0) {
        const int other_i = T.tail(i) == shared ? T.head(i) : T.tail(i);
        const int other_j = T.tail(j) == shared ? T.head(j) : T.tail(j);
        hit = adjacent_fold_contact(moving_edge(from, to, shared, other_i),
                                    moving_edge(from, to, shared, other_j));
      } else {
        hit = moving_segments_contact(moving_edge(from, to, T.tail(i), T.head(i)),
                                      moving_edge(from, to, T.tail(j), T.head(j)), tolerance);
      }
      if (hit && (!earliest || *hit < earliest->lambda)) earliest = Collision{*hit, i, j};
    }
  }
  return earliest;
}

std::optional<std::pair<int, int>> find_self_intersection(const Polyline& curve, double tolerance) {
  if (auto c = swept_collision_check(curve, curve, tolerance)) {
    return std::make_pair(c->edge_a, c->edge_b);
  }
  return std::nullopt;
}

HomotopyCertificate certify_isotopy(const Polyline& from, const Polyline& to,
                                    const IsotopyPolicy& policy) {
  require_same_partition(from, to);
  const double scale = std::max(diameter(from), diameter(to));
  HomotopyCertificate cert;
  cert.min_edge_length_over_lambda = min_edge_length_over_homotopy(from, to);
  if (!(cert.min_edge_length_over_lambda > policy.edge_floor * scale)) {
    cert.failure = "edge length";
    return cert;
  }
  try {
    cert.max_turning_angle_over_lambda =
        max_turning_angle_over_homotopy(from, to, policy.angle_samples);
  } catch (const Error&) {
    cert.max_turning_angle_over_lambda = std::numbers::pi;
  }
  if (!(cert.max_turning_angle_over_lambda < std::numbers::pi - policy.angle_margin)) {
    cert.failure = "turning angle";
    return cert;
  }
  if (auto hit = swept_collision_check(from, to, policy.contact_tolerance * scale)) {
    cert.first_collision_lambda = hit->lambda;
    cert.failing_pair = std::make_pair(hit->edge_a, hit->edge_b);
    cert.failure = "collision";
    return cert;
  }
  cert.passed = true;
  return cert;
}

}  // namespace menger
