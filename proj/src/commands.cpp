#include "menger/commands.hpp"

#include "menger/constraints.hpp"
#include "menger/curve_io.hpp"
#include "menger/error.hpp"
#include "menger/geometry.hpp"
#include "menger/saddle_solver.hpp"
#include "menger/sobolev_metric.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace menger {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

Polyline curve_from_source(const RunConfig& config) {
  const std::string& source = config.curve;
  if (source.rfind("torus:", 0) == 0) {
    int a = 0, b = 0;
    char comma = 0;
    std::istringstream ss(source.substr(6));
    if (!(ss >> a >> comma >> b) || comma != ',' || !ss.eof()) {
      throw Error(ErrorKind::InvalidParams, "expected torus:a,b but got '" + source + "'");
    }
    return generate_torus_knot(a, b, config.n_edges, config.major_radius, config.minor_radius);
  }
  if (source == "square-knot") return generate_square_knot(config.n_edges);
  if (source.rfind("file:", 0) == 0) return load_obj(source.substr(5));
  throw Error(ErrorKind::InvalidParams, "unknown curve source '" + source + "'");
}

}  // namespace

void RunConfig::validate() const {
  energy.validate();
  flow.validate();
  if (n_edges < 3) throw Error(ErrorKind::InvalidParams, "--n must be at least 3");
  if (noise < 0.0) throw Error(ErrorKind::InvalidParams, "--noise must be non-negative");
  if (frame_every < 0) throw Error(ErrorKind::InvalidParams, "--frame-every must be non-negative");
  for (const auto& f : formats) {
    if (f != "obj" && f != "csv") throw Error(ErrorKind::InvalidParams, "unknown format '" + f + "'");
  }
}

Polyline make_initial_curve(const RunConfig& config) {
  config.validate();
  return add_vertex_noise(curve_from_source(config), config.noise, config.seed);
}

void cmd_generate(const RunConfig& config, std::ostream& out) {
  const Polyline curve = make_initial_curve(config);
  if (config.out.empty()) {
    write_obj(curve, out);
  } else {
    save_obj(curve, config.out);
  }
}

FlowResult cmd_flow(const RunConfig& config, std::ostream& log) {
  const Polyline initial = make_initial_curve(config);
  namespace fs = std::filesystem;
  const bool to_disk = !config.out.empty();
  const bool csv = to_disk && config.formats.count("csv");
  const bool obj = to_disk && config.formats.count("obj");
  std::ofstream trace;
  if (to_disk) {
    std::error_code ec;
    fs::create_directories(config.out, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create " + config.out + ": " + ec.message());
  }
  if (csv) {
    const auto path = fs::path(config.out) / "trace.csv";
    trace.open(path, std::ios::binary);
    if (!trace) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    trace << kTraceHeader << '\n';
  }
  int last_frame = -1;
  auto write_frame = [&](int iter, const Polyline& curve) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06d.obj", iter);
    save_obj(curve, (fs::path(config.out) / name).string());
    last_frame = iter;
  };
  auto observer = [&](const FlowRecord& row, const Polyline& curve) {
    if (csv) trace << format_trace_row(row, config.timing) << '\n' << std::flush;
    if (obj && config.frame_every > 0 && row.iter % config.frame_every == 0) write_frame(row.iter, curve);
  };
  FlowResult result = run_flow(initial, config.energy, config.flow, observer);
  if (obj) {
    const int last = result.trace.back().iter;
    if (config.frame_every > 0 && last_frame != last) write_frame(last, result.final_curve);
    save_obj(result.final_curve, (fs::path(config.out) / "final.obj").string());
  }
  const auto& back = result.trace.back();
  log << "stop: " << to_string(result.stop_reason) << "  steps: " << back.iter
      << "  energy: " << format_value(result.trace.front().energy) << " -> "
      << format_value(back.energy) << '\n';
  return result;
}

void cmd_energy(const RunConfig& config, std::ostream& out) {
  const Polyline curve = make_initial_curve(config);
  out << "energy: " << format_value(total_energy(curve, config.energy)) << '\n';
}

void cmd_diagnose(const RunConfig& config, std::ostream& out) {
  const Polyline curve = make_initial_curve(config);
  const EnergyReport energy = energy_differential(curve, config.energy);
  const GagliardoMatrix metric = assemble_gagliardo(curve, config.energy);
  const SaddleSystem system = build_saddle(curve, metric);
  const VertexField g = system.solve_projected_gradient(energy.differential).primal;
  const double grad_norm = std::sqrt(std::max(0.0, flatten(energy.differential).dot(flatten(g))));
  const GeometryDiagnostics geo = diagnose_geometry(curve);
  const double holder = tangent_holder_constant(curve);

  out << "vertices: " << curve.size() << '\n';
  out << "energy: " << format_value(energy.value) << '\n';
  out << "differential_norm: " << format_value(energy.differential.norm()) << '\n';
  out << "grad_norm_J: " << format_value(grad_norm) << '\n';
  out << "seminorm: " << format_value(discrete_seminorm(metric, curve.points())) << '\n';
  out << "bilipschitz: " << format_value(geo.bilipschitz) << '\n';
  out << "min_edge_length: " << format_value(geo.min_edge_length) << '\n';
  out << "max_edge_length: " << format_value(geo.max_edge_length) << '\n';
  out << "total_length: " << format_value(geo.total_length) << '\n';
  out << "max_turning_angle: " << format_value(geo.max_turning_angle) << '\n';
  out << "barycenter:";
  for (int c = 0; c < geo.barycenter.size(); ++c) out << ' ' << format_value(geo.barycenter(c));
  out << '\n';
  out << "theta_min_eigenvalue: " << format_value(geo.theta_min_eigenvalue) << '\n';
  out << "theta_lower_bound: " << format_value(theta_eigenvalue_lower_bound(holder)) << '\n';
}

}  // namespace menger
