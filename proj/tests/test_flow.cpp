#include "menger/error.hpp"
#include "menger/flow.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace menger;
using namespace menger::testing;

TEST(FlowConfig, Validation) {
  FlowConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.sigma_armijo = 1.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.backtrack_factor = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.tau_min = 2.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.max_newton = 0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Predictor, Linearity) {
  const Polyline knot = generate_torus_knot(2, 3, 12);
  std::mt19937_64 rng(1);
  const VertexField g = random_field(3, 12, rng);
  EXPECT_EQ(predictor(knot, g, 0.0).points(), knot.points());
  EXPECT_EQ(predictor(knot, VertexField::Zero(3, 12), 0.7).points(), knot.points());
  const VertexField d1 = predictor(knot, g, 0.3).points() - knot.points();
  const VertexField d2 = predictor(knot, g, 0.6).points() - knot.points();
  EXPECT_LE((d2 - 2.0 * d1).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(predictor(knot, VertexField::Zero(3, 11), 1.0), Error);
}

TEST(Restoration, AlreadyFeasible) {
  const Polyline polygon = regular_polygon(16);
  const SaddleSystem sys = build_saddle(polygon, assemble_gagliardo(polygon, EnergyParams{}));
  const Restoration r = restore_feasibility(polygon, sys, log_strain(polygon), FlowConfig{});
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.curve.points(), polygon.points());
}

TEST(Restoration, SmallPerturbationConverges) {
  const Polyline polygon = regular_polygon(16);
  const SaddleSystem sys = build_saddle(polygon, assemble_gagliardo(polygon, EnergyParams{}));
  const StrainVector ref = log_strain(polygon);
  std::mt19937_64 rng(2);
  const VertexField d = random_field(3, 16, rng);
  // Bisect the perturbation size for a violation of 1e-3.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (constraint_violation(polygon.with_points(polygon.points() + mid * d), ref) < 1e-3 ? lo : hi) = mid;
  }
  const Polyline start = polygon.with_points(polygon.points() + hi * d);
  const double v0 = constraint_violation(start, ref);
  EXPECT_NEAR(v0, 1e-3, 1e-12);
  const Restoration r = restore_feasibility(start, sys, ref, FlowConfig{});
  EXPECT_LE(r.violation, 1e-8);
  EXPECT_LE(r.iterations, 5);
  EXPECT_LE(constraint_violation(r.curve, ref), 1e-8);
  // Barycenter is preserved by the updates (C v = 0).
  EXPECT_LE((barycenter(r.curve) - barycenter(start)).norm(), 1e-10);
}

TEST(Restoration, HugeViolationDiverges) {
  const Polyline polygon = regular_polygon(16);
  const SaddleSystem sys = build_saddle(polygon, assemble_gagliardo(polygon, EnergyParams{}));
  std::mt19937_64 rng(3);
  const Polyline start = polygon.with_points(polygon.points() + 3.0 * random_field(3, 16, rng));
  try {
    restore_feasibility(start, sys, log_strain(polygon), FlowConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::RestorationDiverged || e.kind() == ErrorKind::DegenerateEdge);
  }
}

TEST(Armijo, CriticalPolygonHasNoDescent) {
  const Polyline polygon = regular_polygon(24);
  const EnergyParams params;
  const FlowConfig cfg;
  const SaddleSystem sys = build_saddle(polygon, assemble_gagliardo(polygon, params));
  const EnergyReport e = energy_differential(polygon, params);
  const VertexField g = sys.solve_projected_gradient(e.differential).primal;
  FlowState state = FlowState::start(polygon, cfg);
  try {
    armijo_step(state, sys, e, g, cfg, params);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NoDescent);
  }
}

TEST(Armijo, PerturbedPolygonDecreases) {
  const Polyline polygon = add_vertex_noise(regular_polygon(24), 0.02, 4);
  const EnergyParams params;
  const FlowConfig cfg;
  const SaddleSystem sys = build_saddle(polygon, assemble_gagliardo(polygon, params));
  const EnergyReport e = energy_differential(polygon, params);
  const VertexField g = sys.solve_projected_gradient(e.differential).primal;
  FlowState state = FlowState::start(polygon, cfg);
  const StepOutcome step = armijo_step(state, sys, e, g, cfg, params);
  const double slope = -flatten(e.differential).dot(flatten(g));
  EXPECT_LT(step.energy, e.value);
  EXPECT_LE(step.energy, e.value + cfg.sigma_armijo * step.tau * slope);
  EXPECT_EQ(state.tau, step.tau);
  EXPECT_TRUE(step.certificate.passed);
}

TEST(RunFlow, ZeroBudget) {
  const Polyline knot = generate_torus_knot(2, 3, 24);
  FlowConfig cfg;
  cfg.max_iters = 0;
  const FlowResult r = run_flow(knot, EnergyParams{}, cfg);
  EXPECT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.stop_reason, StopReason::IterationBudget);
  EXPECT_EQ(r.final_curve.points(), knot.points());
}

TEST(RunFlow, RegularPolygonStopsImmediately) {
  const FlowResult r = run_flow(regular_polygon(24), EnergyParams{}, FlowConfig{});
  EXPECT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.stop_reason, StopReason::CriticalPoint);
}

TEST(RunFlow, RejectsSelfIntersectingStart) {
  VertexField pts(3, 4);
  pts << 0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0;
  try {
    run_flow(Polyline(pts), EnergyParams{}, FlowConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInitialCurve);
  }
}

TEST(RunFlow, TrefoilInvariants) {
  const Polyline knot = generate_torus_knot(2, 3, 48);
  FlowConfig cfg;
  cfg.max_iters = 40;
  const double diam = diameter(knot);
  const Eigen::VectorXd b0 = barycenter(knot);
  const StrainVector s0 = log_strain(knot);
  int observed = 0;
  const FlowResult r = run_flow(knot, EnergyParams{}, cfg, [&](const FlowRecord& row, const Polyline& c) {
    EXPECT_EQ(row.iter, observed++);
    EXPECT_LE(constraint_violation(c, s0), cfg.tol_feas);
    EXPECT_LE((barycenter(c) - b0).norm(), 1e-8 * diam);
  });
  ASSERT_EQ(r.trace.size(), 41u);
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    const auto& prev = r.trace[k - 1];
    const auto& row = r.trace[k];
    EXPECT_LT(row.energy, prev.energy);
    // Armijo: decrease >= sigma * tau * ||g||_J^2.
    EXPECT_GE(prev.energy - row.energy, cfg.sigma_armijo * row.tau * prev.grad_norm_J * prev.grad_norm_J *
                                            (1 - 1e-9));
    EXPECT_LE(row.feas_violation, cfg.tol_feas);
    EXPECT_TRUE(row.isotopy_pass);
    EXPECT_GE(row.wall_ms, prev.wall_ms);
  }
  EXPECT_EQ(r.certificates.size(), 40u);
  EXPECT_EQ(r.factorizations, 41);
  EXPECT_LT(r.trace.back().grad_norm_J, r.trace.front().grad_norm_J);
}

TEST(RunFlow, ConvergesOnRelativeGradient) {
  FlowConfig cfg;
  cfg.tol_grad = 0.5;
  const FlowResult r = run_flow(generate_torus_knot(2, 3, 24), EnergyParams{}, cfg);
  EXPECT_EQ(r.stop_reason, StopReason::Converged);
  EXPECT_LE(r.trace.back().grad_norm_J, 0.5 * r.trace.front().grad_norm_J);
}

TEST(RunFlow, DeterministicAcrossWorkerCounts) {
  const Polyline knot = add_vertex_noise(generate_torus_knot(2, 3, 30), 0.02, 8);
  FlowConfig cfg;
  cfg.max_iters = 8;
  EnergyParams one, three;
  three.threads = 3;
  const FlowResult a = run_flow(knot, one, cfg), b = run_flow(knot, three, cfg);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    EXPECT_EQ(a.trace[k].energy, b.trace[k].energy);
    EXPECT_EQ(a.trace[k].tau, b.trace[k].tau);
  }
  EXPECT_EQ(a.final_curve.points(), b.final_curve.points());
}

TEST(RunFlow, IsotopyCheckCanBeDisabled) {
  FlowConfig cfg;
  cfg.max_iters = 3;
  cfg.isotopy_check = false;
  const FlowResult r = run_flow(generate_torus_knot(2, 3, 24), EnergyParams{}, cfg);
  EXPECT_TRUE(r.certificates.empty());
  EXPECT_EQ(r.trace.size(), 4u);
}
