#include "menger/curve_io.hpp"

#include "menger/error.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace menger {

namespace {

std::string format_general(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

// Vertex reference of an "l" record: "7", "7/3"; negative values are relative.
int parse_index(const std::string& token, int vertex_count, int line) {
  const std::string head = token.substr(0, token.find('/'));
  int idx = 0;
  try {
    std::size_t used = 0;
    idx = std::stoi(head, &used);
    if (used != head.size()) throw std::invalid_argument(head);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad index '" + token + "'");
  }
  if (idx < 0) idx = vertex_count + idx + 1;
  if (idx < 1 || idx > vertex_count) {
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ": vertex index " + token + " out of range");
  }
  return idx - 1;
}

}  // namespace

std::string format_scientific(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

void write_obj(const Polyline& curve, std::ostream& out) {
  if (curve.dim() > 3) {
    throw Error(ErrorKind::InvalidParams, "OBJ output supports n <= 3");
  }
  out << "# closed polygonal curve, " << curve.size() << " vertices\n";
  for (int v = 0; v < curve.size(); ++v) {
    out << "v";
    for (int c = 0; c < 3; ++c) out << ' ' << format_general(c < curve.dim() ? curve.point(v)(c) : 0.0);
    out << '\n';
  }
  if (!curve.partition().is_uniform()) {
    for (int v = 0; v < curve.size(); ++v) {
      out << "vp " << format_general(curve.partition().vertex_param(v)) << '\n';
    }
  }
  out << 'l';
  for (int v = 0; v < curve.size(); ++v) out << ' ' << v + 1;
  out << " 1\n";
}

Polyline read_obj(std::istream& in) {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<double> params;
  std::vector<std::string> record;
  int record_line = 0;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Eigen::Vector3d p;
      if (!(ss >> p.x() >> p.y() >> p.z())) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": malformed vertex");
      }
      vertices.push_back(p);
    } else if (tag == "vp") {
      double u = 0.0;
      if (!(ss >> u)) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": malformed vp");
      }
      params.push_back(u);
    } else if (tag == "l") {
      if (!record.empty()) {
        throw Error(ErrorKind::ParseError, "more than one polyline record");
      }
      std::string tok;
      while (ss >> tok) record.push_back(tok);
      record_line = lineno;
    }
  }
  if (record.empty()) throw Error(ErrorKind::ParseError, "no polyline ('l') record");
  const int nv = static_cast<int>(vertices.size());
  std::vector<int> order;
  for (const auto& tok : record) order.push_back(parse_index(tok, nv, record_line));
  if (order.size() < 4 || order.front() != order.back()) {
    throw Error(ErrorKind::ParseError, "polyline record is not closed (last index must repeat the first)");
  }
  order.pop_back();
  std::vector<bool> seen(nv, false);
  for (int v : order) {
    if (seen[v]) throw Error(ErrorKind::ParseError, "polyline record repeats a vertex");
    seen[v] = true;
  }
  if (!params.empty() && static_cast<int>(params.size()) != nv) {
    throw Error(ErrorKind::ParseError, "vp count does not match vertex count");
  }
  const int n = static_cast<int>(order.size());
  VertexField X(3, n);
  std::vector<double> u(n);
  for (int k = 0; k < n; ++k) {
    X.col(k) = vertices[order[k]];
    if (!params.empty()) u[k] = params[order[k]];
  }
  try {
    if (params.empty()) return Polyline(std::move(X));
    return Polyline(std::move(X), Partition(std::move(u)));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

void save_obj(const Polyline& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  write_obj(curve, out);
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

Polyline load_obj(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  return read_obj(in);
}

std::string format_trace_row(const FlowRecord& row, bool include_timing) {
  std::ostringstream out;
  out << row.iter << ',' << format_scientific(row.energy) << ',' << format_scientific(row.grad_norm_J)
      << ',' << format_scientific(row.tau) << ',' << format_scientific(row.feas_violation) << ','
      << row.newton_iters << ',' << (row.isotopy_pass ? 1 : 0) << ','
      << format_scientific(include_timing ? row.wall_ms : 0.0);
  return out.str();
}

}  // namespace menger
