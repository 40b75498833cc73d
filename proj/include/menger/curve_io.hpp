#pragma once

#include "menger/flow.hpp"
#include "menger/geometry.hpp"

#include <iosfwd>
#include <string>

namespace menger {

/// Writes "v x y z" per vertex, "vp u" per vertex for non-uniform partitions,
/// and one closed record "l 1 2 ... N 1". Coordinates use 17 significant
/// digits so write -> read -> write is byte-identical. Requires n = 2 or 3
/// (z = 0 is written for planar curves).
void write_obj(const Polyline& curve, std::ostream& out);

/// Reads the format above. Throws ParseError when the "l" record is missing,
/// not closed, or references unknown or repeated vertices.
Polyline read_obj(std::istream& in);

/// Throw IoError when the file cannot be opened.
void save_obj(const Polyline& curve, const std::string& path);
Polyline load_obj(const std::string& path);

/// Formats a double in scientific notation with 17 significant digits.
std::string format_scientific(double value);

inline constexpr const char* kTraceHeader =
    "iter,energy,grad_norm_J,tau,feas_violation,newton_iters,isotopy_pass,wall_ms";

/// One CSV row matching kTraceHeader. With include_timing = false the
/// wall_ms column is written as 0 so traces are reproducible byte for byte.
std::string format_trace_row(const FlowRecord& row, bool include_timing = true);

}  // namespace menger
