#include "menger/flow.hpp"

#include "menger/error.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace menger {

void FlowConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::InvalidParams, what);
  };
  require(sigma_armijo > 0.0 && sigma_armijo < 1.0, "sigma_armijo must lie in (0, 1)");
  require(backtrack_factor > 0.0 && backtrack_factor < 1.0, "backtrack_factor must lie in (0, 1)");
  require(step_grow_factor >= 1.0, "step_grow_factor must be >= 1");
  require(tau_init > 0.0, "tau_init must be positive");
  require(tau_min > 0.0 && tau_min <= tau_init, "tau_min must lie in (0, tau_init]");
  require(tol_feas > 0.0, "tol_feas must be positive");
  require(max_newton >= 1, "max_newton must be >= 1");
  require(tol_grad >= 0.0, "tol_grad must be non-negative");
  require(critical_ratio >= 0.0, "critical_ratio must be non-negative");
  require(max_iters >= 0, "max_iters must be non-negative");
  require(isotopy.angle_samples >= 1, "angle_samples must be >= 1");
  require(isotopy.angle_margin >= 0.0 && isotopy.angle_margin < 3.14159,
          "angle_margin must lie in [0, pi)");
  require(isotopy.edge_floor >= 0.0 && isotopy.contact_tolerance >= 0.0,
          "isotopy tolerances must be non-negative");
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Converged: return "converged";
    case StopReason::CriticalPoint: return "critical point";
    case StopReason::IterationBudget: return "iteration budget";
    case StopReason::StepsizeUnderflow: return "step size underflow";
  }
  return "unknown";
}

FlowState FlowState::start(const Polyline& initial, const FlowConfig& cfg) {
  return FlowState{initial, log_strain(initial), barycenter(initial), cfg.tau_init, 0, {}};
}

Polyline predictor(const Polyline& curve, const VertexField& gradient, double tau) {
  if (gradient.rows() != curve.dim() || gradient.cols() != curve.size()) {
    throw Error(ErrorKind::DimensionMismatch, "gradient shape does not match the curve");
  }
  return curve.with_points(curve.points() - tau * gradient);
}

Restoration restore_feasibility(const Polyline& start, const SaddleSystem& system,
                                const StrainVector& reference, const FlowConfig& cfg) {
  Polyline q = start;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0;; ++k) {
    const Eigen::VectorXd residual = log_strain(q).values - reference.values;
    const double violation = residual.lpNorm<Eigen::Infinity>();
    // Also bound the relative edge-length error e^d - 1, which exceeds d for d > 0.
    const double length_error =
        residual.unaryExpr([](double d) { return std::abs(std::expm1(d)); }).maxCoeff();
    if (violation <= cfg.tol_feas && length_error <= cfg.tol_feas) {
      if (violation == 0.0) return {std::move(q), k, violation};
      // One more back-substitution keeps the iterate off the tolerance
      // boundary. Without it the second-order strain drift of successive
      // predictor steps creeps up to tol_feas and stays there.
      Polyline polished = q.with_points(q.points() - system.solve_restoration(residual).primal);
      const double polished_violation =
          (log_strain(polished).values - reference.values).lpNorm<Eigen::Infinity>();
      if (polished_violation < violation) return {std::move(polished), k + 1, polished_violation};
      return {std::move(q), k, violation};
    }
    if (!std::isfinite(violation) || violation > 2.0 * previous || k == cfg.max_newton) {
      throw Error(ErrorKind::RestorationDiverged,
                  "strain violation " + std::to_string(violation) + " after " + std::to_string(k) +
                      " modified Newton iterations");
    }
    previous = violation;
    const SaddleSolution update = system.solve_restoration(residual);
    q = q.with_points(q.points() - update.primal);
  }
}

StepOutcome armijo_step(FlowState& state, const SaddleSystem& system, const EnergyReport& energy,
                        const VertexField& gradient, const FlowConfig& cfg,
                        const EnergyParams& params) {
  const double slope = -flatten(energy.differential).dot(flatten(gradient));
  const double dnorm = energy.differential.norm();
  if (!(slope < 0.0) || std::sqrt(-slope) <= cfg.critical_ratio * dnorm) {
    throw Error(ErrorKind::NoDescent, "projected gradient vanishes");
  }
  const double phi0 = energy.value;
  FlowRecord counters;
  double tau = state.iter == 0 ? state.tau : state.tau * cfg.step_grow_factor;
  for (; tau >= cfg.tau_min; tau *= cfg.backtrack_factor) {
    Restoration restored{state.curve};
    try {
      restored = restore_feasibility(predictor(state.curve, gradient, tau), system,
                                     state.reference_strain, cfg);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RestorationDiverged && e.kind() != ErrorKind::DegenerateEdge) throw;
      ++counters.rejected_restoration;
      continue;
    }
    HomotopyCertificate cert;
    if (cfg.isotopy_check) {
      cert = certify_isotopy(state.curve, restored.curve, cfg.isotopy);
      if (!cert.passed) {
        ++counters.rejected_isotopy;
        continue;
      }
    } else {
      cert.passed = true;
    }
    double phi = std::numeric_limits<double>::infinity();
    try {
      phi = total_energy(restored.curve, params);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MidpointCollision && e.kind() != ErrorKind::DegenerateEdge) throw;
    }
    if (!(phi <= phi0 + cfg.sigma_armijo * tau * slope && phi < phi0)) {
      ++counters.rejected_armijo;
      continue;
    }
    state.tau = tau;
    counters.tau = tau;
    counters.newton_iters = restored.iterations;
    counters.feas_violation = restored.violation;
    counters.isotopy_pass = cert.passed;
    Polyline accepted = restored.curve;
    return StepOutcome{std::move(accepted), tau, phi, std::move(restored), std::move(cert), counters};
  }
  throw Error(ErrorKind::StepsizeUnderflow,
              "no acceptable step size above " + std::to_string(cfg.tau_min));
}

FlowResult run_flow(const Polyline& initial, const EnergyParams& params, const FlowConfig& cfg,
                    const FlowObserver& observer) {
  params.validate();
  cfg.validate();
  if (!is_regular(initial)) {
    throw Error(ErrorKind::InvalidInitialCurve, "initial curve has a zero-length edge");
  }
  if (auto hit = find_self_intersection(initial, cfg.isotopy.contact_tolerance * diameter(initial))) {
    throw Error(ErrorKind::InvalidInitialCurve, "initial curve self-intersects at edges " +
                                                    std::to_string(hit->first) + " and " +
                                                    std::to_string(hit->second));
  }
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  // J only depends on the partition, which the flow never changes.
  const GagliardoMatrix metric = assemble_gagliardo(initial, params);
  FlowState state = FlowState::start(initial, cfg);
  FlowResult result{initial, {}, {}, StopReason::IterationBudget, 0};
  FlowRecord pending;
  double initial_grad = 0.0;

  for (;;) {
    const EnergyReport energy = energy_differential(state.curve, params);
    const SaddleSystem system = build_saddle(state.curve, metric);
    result.factorizations += system.factorization_count();
    const VertexField gradient = system.solve_projected_gradient(energy.differential).primal;
    const double grad_sq = flatten(energy.differential).dot(flatten(gradient));
    const double grad_norm = std::sqrt(std::max(0.0, grad_sq));

    FlowRecord row = pending;
    row.iter = state.iter;
    row.energy = energy.value;
    row.grad_norm_J = grad_norm;
    row.feas_violation = constraint_violation(state.curve, state.reference_strain);
    row.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    state.trace.push_back(row);
    if (observer) observer(row, state.curve);
    if (state.iter == 0) initial_grad = grad_norm;

    if (state.iter >= cfg.max_iters) {
      result.stop_reason = StopReason::IterationBudget;
      break;
    }
    if (grad_norm <= cfg.critical_ratio * energy.differential.norm()) {
      result.stop_reason = StopReason::CriticalPoint;
      break;
    }
    if (state.iter > 0 && grad_norm <= cfg.tol_grad * initial_grad) {
      result.stop_reason = StopReason::Converged;
      break;
    }
    try {
      StepOutcome step = armijo_step(state, system, energy, gradient, cfg, params);
      state.curve = std::move(step.curve);
      ++state.iter;
      pending = step.counters;
      if (cfg.isotopy_check) result.certificates.push_back(std::move(step.certificate));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::StepsizeUnderflow) {
        result.stop_reason = StopReason::StepsizeUnderflow;
        break;
      }
      if (e.kind() == ErrorKind::NoDescent) {
        result.stop_reason = StopReason::CriticalPoint;
        break;
      }
      throw;
    }
  }
  result.final_curve = state.curve;
  result.trace = std::move(state.trace);
  return result;
}

}  // namespace menger
