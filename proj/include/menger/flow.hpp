#pragma once

#include "menger/constraints.hpp"
#include "menger/energy.hpp"
#include "menger/isotopy.hpp"
#include "menger/saddle_solver.hpp"
#include "menger/sobolev_metric.hpp"

#include <functional>
#include <string_view>
#include <vector>

namespace menger {

struct FlowConfig {
  double sigma_armijo = 1e-4;
  double backtrack_factor = 0.5;
  double step_grow_factor = 2.0;
  double tau_init = 1.0;
  double tau_min = 1e-12;
  double tol_feas = 1e-8;
  int max_newton = 20;
  /// Stop once ||g||_J <= tol_grad * ||g_0||_J.
  double tol_grad = 1e-6;
  /// Treat the curve as critical when ||g||_J <= critical_ratio * ||dE||.
  double critical_ratio = 1e-9;
  int max_iters = 1000;
  bool isotopy_check = true;
  IsotopyPolicy isotopy;

  /// Throws InvalidParams.
  void validate() const;
};

/// One row per accepted iterate (row 0 is the initial curve).
struct FlowRecord {
  int iter = 0;
  double energy = 0.0;
  /// ||g||_J of the projected gradient at this iterate.
  double grad_norm_J = 0.0;
  /// Step size that produced this iterate (0 for the initial curve).
  double tau = 0.0;
  double feas_violation = 0.0;
  int newton_iters = 0;
  bool isotopy_pass = true;
  double wall_ms = 0.0;
  /// Rejected trial step sizes before acceptance, by cause.
  int rejected_restoration = 0;
  int rejected_armijo = 0;
  int rejected_isotopy = 0;
};

enum class StopReason { Converged, CriticalPoint, IterationBudget, StepsizeUnderflow };

std::string_view to_string(StopReason reason);

/// Mutable driver state. The reference strain and barycenter are those of
/// the initial curve.
struct FlowState {
  Polyline curve;
  StrainVector reference_strain;
  Eigen::VectorXd reference_barycenter;
  double tau = 1.0;
  int iter = 0;
  std::vector<FlowRecord> trace;

  static FlowState start(const Polyline& initial, const FlowConfig& cfg);
};

struct FlowResult {
  Polyline final_curve;
  std::vector<FlowRecord> trace;
  /// Certificate of every accepted step, in order (empty when disabled).
  std::vector<HomotopyCertificate> certificates;
  StopReason stop_reason = StopReason::IterationBudget;
  int factorizations = 0;
};

/// P - tau g.
Polyline predictor(const Polyline& curve, const VertexField& gradient, double tau);

struct Restoration {
  Polyline curve;
  int iterations = 0;
  double violation = 0.0;
};

/// Modified Newton iteration Q_{k+1} = Q_k - v_k with the saddle matrix
/// frozen at the base point. Stops once both the log-strain violation and the
/// relative edge-length error are within tol_feas. Throws RestorationDiverged
/// when the violation is not below tol_feas after max_newton iterations (or blows up), and
/// DegenerateEdge if an iterate collapses an edge.
Restoration restore_feasibility(const Polyline& start, const SaddleSystem& system,
                                const StrainVector& reference, const FlowConfig& cfg);

struct StepOutcome {
  Polyline curve;
  double tau = 0.0;
  double energy = 0.0;
  Restoration restoration;
  HomotopyCertificate certificate;
  FlowRecord counters;
};

/// Backtracking line search starting from state.tau * grow. Accepts the first
/// tau whose restored curve satisfies the Armijo condition and, when enabled,
/// passes isotopy certification. Updates state.tau on success.
/// Throws NoDescent if g is (numerically) zero, StepsizeUnderflow below tau_min.
StepOutcome armijo_step(FlowState& state, const SaddleSystem& system, const EnergyReport& energy,
                        const VertexField& gradient, const FlowConfig& cfg,
                        const EnergyParams& params);

/// Called after each trace row is recorded, with the iterate it describes.
using FlowObserver = std::function<void(const FlowRecord&, const Polyline&)>;

/// Projected Sobolev gradient descent. Throws InvalidInitialCurve when the
/// initial curve is irregular or self-intersecting.
FlowResult run_flow(const Polyline& initial, const EnergyParams& params, const FlowConfig& cfg,
                    const FlowObserver& observer = {});

}  // namespace menger
