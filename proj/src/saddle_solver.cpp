#include "menger/saddle_solver.hpp"

#include "menger/error.hpp"

#include <limits>
#include <sstream>
#include <string>

namespace menger {

SaddleSystem::SaddleSystem(const GagliardoMatrix& metric, const StrainJacobian& strain,
                           const BarycenterJacobian& bary, std::uint64_t base_point_fingerprint)
    : vertex_count_(metric.vertex_count()), dim_(metric.dim), fingerprint_(base_point_fingerprint) {
  const Eigen::Index n = vertex_count_;
  const Eigen::Index d = dim_;
  const Eigen::Index primal = n * d;
  if (strain.matrix.rows() != n || strain.matrix.cols() != primal || bary.matrix.rows() != d ||
      bary.matrix.cols() != primal || strain.dim != dim_ || bary.dim != dim_) {
    throw Error(ErrorKind::DimensionMismatch, "saddle blocks have inconsistent shapes");
  }
  const Eigen::Index size = primal + n + d;
  matrix_ = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double v = metric.block(a, b);
      for (Eigen::Index c = 0; c < d; ++c) matrix_(a * d + c, b * d + c) = v;
    }
  }
  for (Eigen::Index row = 0; row < strain.matrix.outerSize(); ++row) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(strain.matrix, row); it; ++it) {
      matrix_(primal + row, it.col()) = it.value();
      matrix_(it.col(), primal + row) = it.value();
    }
  }
  matrix_.block(primal + n, 0, d, primal) = bary.matrix;
  matrix_.block(0, primal + n, primal, d) = bary.matrix.transpose();
}

void SaddleSystem::factorize(double min_rcond) {
  lu_.emplace(matrix_);
  ++factorizations_;
  rcond_ = lu_->rcond();
  // The estimate is unreliable once a pivot vanishes (it can even come out
  // moderate), so zero pivots are caught separately.
  const Eigen::VectorXd pivots = lu_->matrixLU().diagonal().cwiseAbs();
  const double tiny = dimension() * std::numeric_limits<double>::epsilon() * pivots.maxCoeff();
  if (!(pivots.minCoeff() > tiny)) rcond_ = 0.0;
  if (!(rcond_ >= min_rcond)) {
    lu_.reset();
    std::ostringstream msg;
    msg << "saddle matrix of size " << dimension() << " is singular (rcond estimate " << rcond_
        << ")";
    throw Error(ErrorKind::SingularSystem, msg.str());
  }
}

Eigen::VectorXd SaddleSystem::solve(const Eigen::VectorXd& rhs) const {
  if (!lu_) throw Error(ErrorKind::SingularSystem, "solve called before factorize");
  if (rhs.size() != matrix_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "right-hand side has wrong length");
  }
  ++solves_;
  return lu_->solve(rhs);
}

SaddleSolution SaddleSystem::split(const Eigen::VectorXd& x) const {
  const Eigen::Index primal = static_cast<Eigen::Index>(vertex_count_) * dim_;
  SaddleSolution out;
  out.primal = unflatten(x.head(primal), dim_);
  out.strain_multipliers = x.segment(primal, vertex_count_);
  out.barycenter_multipliers = x.tail(dim_);
  return out;
}

SaddleSolution SaddleSystem::solve_projected_gradient(const VertexField& differential) const {
  if (differential.rows() != dim_ || differential.cols() != vertex_count_) {
    throw Error(ErrorKind::DimensionMismatch, "differential has wrong shape");
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(matrix_.rows());
  rhs.head(differential.size()) = flatten(differential);
  return split(solve(rhs));
}

SaddleSolution SaddleSystem::solve_restoration(const Eigen::VectorXd& violation) const {
  if (violation.size() != vertex_count_) {
    throw Error(ErrorKind::DimensionMismatch, "violation has wrong length");
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(matrix_.rows());
  rhs.segment(static_cast<Eigen::Index>(vertex_count_) * dim_, vertex_count_) = violation;
  return split(solve(rhs));
}

SaddleSystem assemble_saddle(const GagliardoMatrix& metric, const StrainJacobian& strain,
                             const BarycenterJacobian& bary) {
  return SaddleSystem(metric, strain, bary);
}

SaddleSystem build_saddle(const Polyline& curve, const GagliardoMatrix& metric) {
  SaddleSystem sys(metric, log_strain_jacobian(curve),
                   barycenter_jacobian(curve.partition(), curve.dim()), curve.fingerprint());
  sys.factorize();
  return sys;
}

}  // namespace menger
