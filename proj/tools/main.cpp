#include "menger/commands.hpp"
#include "menger/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  menger::RunConfig cfg;
  std::vector<std::string> formats{"obj", "csv"};
  bool no_isotopy = false;
  bool no_timing = false;

  CLI::App app{"Discrete Menger-curvature energy and its constrained Sobolev gradient flow"};
  app.set_config("--config", "", "Read options from a key=value file (flags override it)");
  // Keep "curve=torus:2,3" a single value; formats are split by their own delimiter.
  app.get_config_formatter_base()->arrayDelimiter(';');
  app.require_subcommand(1);

  app.add_option("--p", cfg.energy.p, "Energy exponent p (admissible range (7/3, 8/3))")->capture_default_str();
  app.add_flag("--allow-any-p", cfg.energy.allow_any_p, "Skip the admissible-range check on p");
  app.add_option("--threads", cfg.energy.threads, "Worker threads for energy and metric assembly (0 = all cores)")
      ->capture_default_str();
  app.add_option("--n", cfg.n_edges, "Number of edges of generated curves")->capture_default_str();
  app.add_option("--curve", cfg.curve, "torus:a,b | square-knot | file:path.obj")->capture_default_str();
  app.add_option("--major-radius", cfg.major_radius, "Torus knot major radius")->capture_default_str();
  app.add_option("--minor-radius", cfg.minor_radius, "Torus knot minor radius")->capture_default_str();
  app.add_option("--noise", cfg.noise, "Uniform vertex noise amplitude")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Noise seed")->capture_default_str();
  app.add_option("--sigma", cfg.flow.sigma_armijo, "Armijo constant")->capture_default_str();
  app.add_option("--tau-init", cfg.flow.tau_init, "Initial step size")->capture_default_str();
  app.add_option("--tau-min", cfg.flow.tau_min, "Smallest step size before giving up")->capture_default_str();
  app.add_option("--tol-feas", cfg.flow.tol_feas, "Constraint restoration tolerance")->capture_default_str();
  app.add_option("--max-newton", cfg.flow.max_newton, "Restoration iteration cap")->capture_default_str();
  app.add_option("--tol-grad", cfg.flow.tol_grad, "Relative gradient-norm stopping tolerance")->capture_default_str();
  app.add_option("--max-iters", cfg.flow.max_iters, "Iteration budget")->capture_default_str();
  app.add_flag("--no-isotopy-check", no_isotopy, "Accept steps without certifying the homotopy");
  app.add_option("--frame-every", cfg.frame_every, "Write a frame every k steps (0 = none)")->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (generate) or directory (flow)");
  app.add_option("--formats", formats, "Outputs for flow: obj, csv")->delimiter(',')->capture_default_str();
  app.add_flag("--no-timing", no_timing, "Write wall_ms as 0 so traces are reproducible byte for byte");

  auto* generate = app.add_subcommand("generate", "Write the initial curve as OBJ")->fallthrough();
  auto* flow = app.add_subcommand("flow", "Run the gradient flow")->fallthrough();
  auto* energy = app.add_subcommand("energy", "Print the discrete energy")->fallthrough();
  auto* diagnose = app.add_subcommand("diagnose", "Print geometric and energetic diagnostics")->fallthrough();

  CLI11_PARSE(app, argc, argv);
  cfg.flow.isotopy_check = !no_isotopy;
  cfg.timing = !no_timing;
  cfg.formats = {formats.begin(), formats.end()};

  try {
    if (generate->parsed()) menger::cmd_generate(cfg, std::cout);
    if (flow->parsed()) menger::cmd_flow(cfg, std::cout);
    if (energy->parsed()) menger::cmd_energy(cfg, std::cout);
    if (diagnose->parsed()) menger::cmd_diagnose(cfg, std::cout);
  } catch (const menger::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
