#pragma once

#include "menger/energy.hpp"
#include "menger/flow.hpp"

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>

namespace menger {

/// Everything the command-line tool can configure.
struct RunConfig {
  EnergyParams energy;
  FlowConfig flow;
  int n_edges = 48;
  /// "torus:a,b", "square-knot", or "file:path".
  std::string curve = "torus:2,3";
  double major_radius = 2.0;
  double minor_radius = 1.0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  /// Output file for generate, output directory for flow.
  std::string out;
  /// Write a frame every this many accepted steps (0 disables frames).
  int frame_every = 0;
  std::set<std::string> formats{"obj", "csv"};
  bool timing = true;

  /// Throws InvalidParams.
  void validate() const;
};

/// Builds the initial curve from the curve source, then applies noise.
Polyline make_initial_curve(const RunConfig& config);

/// Writes the initial curve as OBJ to config.out, or to `out` when empty.
void cmd_generate(const RunConfig& config, std::ostream& out);

/// Runs the flow. Writes trace.csv, frame_%06d.obj and final.obj into
/// config.out (when set) and a one-line summary to `log`.
FlowResult cmd_flow(const RunConfig& config, std::ostream& log);

/// Prints "energy: <value>".
void cmd_energy(const RunConfig& config, std::ostream& out);

/// Prints labeled "key: value" diagnostics of the curve.
void cmd_diagnose(const RunConfig& config, std::ostream& out);

}  // namespace menger
